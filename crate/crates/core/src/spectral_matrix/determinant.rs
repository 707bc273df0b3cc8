use rug::Float;

use super::{build_matrix, OperatorOrder, ScaledComplexMatrix};
use crate::error::{Result, SpectraError};
use crate::numeric::{check_precision, pi, Complex};
use crate::scaled::ScaledValue;

/// Largest phase drift tolerated between the two calibration points.
pub const PHASE_TOLERANCE: f64 = 1e-6;

const CALIBRATION_POINTS: (f64, f64) = (1.0, 2.0);
const CALIBRATION_SHIFT: f64 = 0.1;
const ROOT_GUARD: f64 = 1e-3;

/// Determinant of a square complex matrix by LU with partial pivoting.
pub(crate) fn lu_determinant(mut a: Vec<Complex>, n: usize, bits: u32) -> Complex {
    let mut det = Complex::one(bits);
    for k in 0..n {
        let mut pivot = k;
        let mut best = a[k * n + k].norm_sqr();
        for r in (k + 1)..n {
            let v = a[r * n + k].norm_sqr();
            if v > best {
                best = v;
                pivot = r;
            }
        }
        if best.is_zero() {
            return Complex::zero(bits);
        }
        if pivot != k {
            for c in 0..n {
                a.swap(k * n + c, pivot * n + c);
            }
            det = -&det;
        }
        let p = a[k * n + k].clone();
        det = &det * &p;
        let p_inv = p.inv();
        for r in (k + 1)..n {
            let factor = &a[r * n + k] * &p_inv;
            if factor.is_zero() {
                continue;
            }
            for c in (k + 1)..n {
                let t = &factor * &a[k * n + c];
                a[r * n + c] = &a[r * n + c] - &t;
            }
        }
    }
    det
}

/// Determinant of the mantissa matrix alone (the represented determinant
/// divided by `e^{Σ column exponents}`).
pub fn mantissa_determinant(m: &ScaledComplexMatrix) -> Complex {
    lu_determinant(m.entries.clone(), m.dim(), m.precision_bits())
}

/// `det A_α(μ)` as a scaled value.
pub fn scaled_determinant(m: &ScaledComplexMatrix) -> ScaledValue {
    ScaledValue::new(mantissa_determinant(m), m.total_exponent())
}

/// Reduces an angle to `(−π/2, π/2]`, i.e. modulo π.
fn reduce_mod_pi(theta: &Float) -> Float {
    let bits = theta.prec();
    let p = pi(bits);
    let half = Float::with_val(bits, &p / 2u32);
    let mut t = theta.clone();
    while t > half {
        t -= &p;
    }
    let neg_half = Float::with_val(bits, -&half);
    while t <= neg_half {
        t += &p;
    }
    t
}

/// Real root-finding objective `F(μ) = Re(det A_α(μ)·e^{−iθ_α}) / e^{Σ exponents}`.
///
/// On the real μ-axis `det A_α(μ)` has a constant phase `θ_α`; it is
/// measured once at construction and checked at a second point.
#[derive(Debug, Clone)]
pub struct CharacteristicDeterminant {
    order: OperatorOrder,
    precision_bits: u32,
    rotation: Complex,
    theta: f64,
    calibration: (f64, f64),
    phase_drift: f64,
}

impl CharacteristicDeterminant {
    pub fn new(order: OperatorOrder, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        let (mut mu1, mut mu2) = CALIBRATION_POINTS;
        for _ in 0..20 {
            if near_root(order, mu1)? || near_root(order, mu2)? {
                mu1 += CALIBRATION_SHIFT;
                mu2 += CALIBRATION_SHIFT;
                continue;
            }
            let (theta, cal_bits) = stable_phase(order, mu1, precision_bits)?;
            let d2 = mantissa_at(order, mu2, cal_bits)?;
            let rotation = Complex::cis(&Float::with_val(cal_bits, -&theta));
            let rotated = &d2 * &rotation;
            let drift = reduce_mod_pi(&rotated.arg()).to_f64().abs();
            if drift > PHASE_TOLERANCE {
                return Err(SpectraError::InternalConsistency(format!(
                    "phase of det A_{}(mu) drifts by {drift:e} rad between mu = {mu1} and mu = {mu2}",
                    order.alpha()
                )));
            }
            return Ok(CharacteristicDeterminant {
                order,
                precision_bits,
                rotation,
                theta: theta.to_f64(),
                calibration: (mu1, mu2),
                phase_drift: drift,
            });
        }
        Err(SpectraError::InternalConsistency(
            "no calibration point clear of eigenvalues".into(),
        ))
    }

    pub fn order(&self) -> OperatorOrder {
        self.order
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// The constant phase `θ_α ∈ (−π/2, π/2]`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn calibration_points(&self) -> (f64, f64) {
        self.calibration
    }

    pub fn phase_drift(&self) -> f64 {
        self.phase_drift
    }

    /// Precision at which the phase was measured.
    pub fn phase_bits(&self) -> u32 {
        self.rotation.prec()
    }

    /// Rotated mantissa determinant; its imaginary part vanishes up to rounding.
    pub fn eval_complex(&self, mu: &Float) -> Result<Complex> {
        self.eval_complex_at(mu, self.precision_bits)
    }

    fn eval_complex_at(&self, mu: &Float, bits: u32) -> Result<Complex> {
        let m = build_matrix(self.order, mu, bits)?;
        Ok(&mantissa_determinant(&m) * &self.rotation.with_prec(bits))
    }

    /// `F(μ)` with the matrix built at `bits` of working precision.
    ///
    /// Above [`phase_bits`](Self::phase_bits) the result is still accurate to
    /// a relative `2^{−phase_bits}`, which is what root finding needs.
    pub fn eval_at(&self, mu: &Float, bits: u32) -> Result<Float> {
        check_precision(bits)?;
        Ok(self.eval_complex_at(mu, bits)?.re)
    }

    pub fn eval(&self, mu: &Float) -> Result<Float> {
        Ok(self.eval_complex(mu)?.re)
    }

    pub fn eval_f64(&self, mu: f64) -> Result<f64> {
        Ok(self
            .eval(&Float::with_val(self.precision_bits, mu))?
            .to_f64())
    }

    /// Same objective at a different precision, reusing the calibrated phase.
    pub fn with_precision(&self, precision_bits: u32) -> Result<Self> {
        check_precision(precision_bits)?;
        if precision_bits > self.rotation.prec() {
            return CharacteristicDeterminant::new(self.order, precision_bits);
        }
        Ok(CharacteristicDeterminant {
            precision_bits,
            ..self.clone()
        })
    }

    /// Angular distance of `det A_α(μ)` from the calibrated real line.
    pub fn phase_drift_at(&self, mu: &Float) -> Result<f64> {
        let z = self.eval_complex(mu)?;
        Ok(reduce_mod_pi(&z.arg()).to_f64().abs())
    }
}

fn mantissa_at(order: OperatorOrder, mu: f64, bits: u32) -> Result<Complex> {
    let m = build_matrix(order, &Float::with_val(bits, mu), bits)?;
    Ok(mantissa_determinant(&m))
}

/// Phase of the determinant at `mu`, computed at increasing precision until
/// two successive precisions agree.
fn stable_phase(order: OperatorOrder, mu: f64, bits: u32) -> Result<(Float, u32)> {
    let mut p = bits.max(128) + 64;
    let mut previous = reduce_mod_pi(&mantissa_at(order, mu, p)?.arg());
    while p <= 8192 {
        let q = 2 * p;
        let current = reduce_mod_pi(&mantissa_at(order, mu, q)?.arg());
        let delta = reduce_mod_pi(&Float::with_val(q, &current - &previous));
        if delta.to_f64().abs() < 1e-12 {
            return Ok((current, q));
        }
        previous = current;
        p = q;
    }
    Err(SpectraError::InternalConsistency(format!(
        "phase of det A_{}({mu}) does not stabilize up to 16384 bits",
        order.alpha()
    )))
}

/// True when |det| has a local dip at `mu` on the scale of the root guard.
fn near_root(order: OperatorOrder, mu: f64) -> Result<bool> {
    let bits = 128 + 4 * order.alpha() * order.alpha();
    let at = |x: f64| -> Result<f64> { Ok(mantissa_at(order, x, bits)?.abs().to_f64()) };
    let centre = at(mu)?;
    let lo = at(mu - ROOT_GUARD)?;
    let hi = at(mu + ROOT_GUARD)?;
    Ok(centre < lo.min(hi) && centre < 0.5 * lo.max(hi))
}

/// `F(μ)` for one point; builds the calibrated objective on every call.
pub fn normalized_real_det(order: OperatorOrder, mu: &Float, precision_bits: u32) -> Result<Float> {
    CharacteristicDeterminant::new(order, precision_bits)?.eval(mu)
}
