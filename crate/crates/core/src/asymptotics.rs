//! Two-term asymptotics of the eigenvalues and of `λ_min`.
//!
//! For large μ the determinant behaves like
//! `K₁e^{γ₁μ}sin μ + K₂e^{γ₂μ}sin(s μ) + O(e^{γ₃μ})` (cosines for even α),
//! which gives `μ_n = base + correction + O(error_scale)` with
//! `base = nπ` (odd α) or `π/2 + nπ` (even α).

use rug::ops::Pow;
use rug::Float;

use crate::error::{Result, SpectraError};
use crate::numeric::{check_precision, pi, pi_fraction, sqrt3};
use crate::spectral_matrix::{laplace_constants, OperatorOrder, Parity};

#[derive(Debug, Clone)]
pub struct AsymptoticModel {
    pub order: OperatorOrder,
    /// Odd α: `c_ℓ = cos(ℓπ/(2α))` for `ℓ = 1, 3, …, 2α−1`.
    /// Even α: `c_j = cos(jπ/α)` for `j = 0, …, α−1`.
    pub c: Vec<Float>,
    /// The matching sines.
    pub s: Vec<Float>,
    pub sigma: Float,
    pub gamma1: Float,
    pub gamma2: Float,
    pub gamma3: Float,
    /// `−K₂/K₁ = 2 / sin²(π/(2α))`.
    pub ratio: Float,
    /// `0` for odd α, `π/2` for even α.
    pub offset: Float,
    /// Numerator of the correction: 2, except 1 for α = 2.
    pub numerator_factor: u32,
}

impl AsymptoticModel {
    /// `c_ℓ` by its index in the trigonometric formulas (ℓ odd for odd α).
    pub fn c_at(&self, l: u32) -> &Float {
        match self.order.parity() {
            Parity::Odd => &self.c[(l as usize - 1) / 2],
            Parity::Even => &self.c[l as usize],
        }
    }
}

/// `μ_n ≈ base + correction`, accurate to `O(error_scale)`.
#[derive(Debug, Clone)]
pub struct MuPrediction {
    pub n: u64,
    pub base: Float,
    pub correction: Float,
    pub error_scale: Float,
}

impl MuPrediction {
    pub fn value(&self) -> Float {
        Float::with_val(self.base.prec(), &self.base + &self.correction)
    }
}

fn unsupported_alpha1() -> SpectraError {
    SpectraError::Unsupported(
        "alpha = 1 has the exact spectrum (n pi)^2; use spectrum1".into(),
    )
}

pub fn model(order: OperatorOrder, bits: u32) -> Result<AsymptoticModel> {
    check_precision(bits)?;
    let alpha = order.alpha();
    if alpha == 1 {
        return Err(unsupported_alpha1());
    }
    let a = i64::from(alpha);
    let (c, s): (Vec<Float>, Vec<Float>) = match order.parity() {
        Parity::Odd => (0..a)
            .map(|i| {
                let t = pi_fraction(bits, 2 * i + 1, 2 * a);
                (Float::with_val(bits, t.cos_ref()), t.sin())
            })
            .unzip(),
        Parity::Even => (0..a)
            .map(|j| {
                let t = pi_fraction(bits, j, a);
                (Float::with_val(bits, t.cos_ref()), t.sin())
            })
            .unzip(),
    };
    let zero = Float::new(bits);
    let k = order.k() as usize;

    let (sigma, gamma1, gamma2, gamma3) = match (order.parity(), alpha) {
        (Parity::Odd, 3) => {
            // a²b·ω-type terms: e^{μ√3}, e^{μ√3/2}, e^{0}
            let r3 = sqrt3(bits);
            let half = Float::with_val(bits, &r3 / 2u32);
            (zero.clone(), r3, half, zero.clone())
        }
        (Parity::Even, 2) => (
            zero.clone(),
            Float::with_val(bits, 1),
            zero.clone(),
            Float::with_val(bits, -1),
        ),
        (Parity::Odd, _) => {
            // c index ℓ = 2i+1 lives at position i
            let mut sigma = zero.clone();
            for j in 1..=(k - 2) {
                sigma += &c[j - 1];
            }
            sigma *= 2u32;
            let c_a = &c[k - 2]; // c_{2k−3}
            let c_b = &c[k - 1]; // c_{2k−1}
            let g1 = Float::with_val(bits, &sigma + c_a) + c_a + c_b + c_b;
            let g2 = Float::with_val(bits, &sigma + c_a) + c_a + c_b;
            let g3 = Float::with_val(bits, &sigma + c_a) + c_b + c_b;
            (sigma, g1, g2, g3)
        }
        (Parity::Even, _) => {
            let mut sigma = zero.clone();
            for cj in &c[1..=(k - 2)] {
                sigma += cj;
            }
            sigma *= 2u32;
            sigma += 1u32;
            let c_k = &c[k - 1];
            let g1 = Float::with_val(bits, &sigma + c_k) + c_k;
            let g2 = Float::with_val(bits, &sigma + c_k);
            (sigma.clone(), g1, g2, sigma)
        }
    };

    let ratio = laplace_constants(order, bits)?.ratio;
    let offset = match order.parity() {
        Parity::Odd => zero,
        Parity::Even => Float::with_val(bits, pi(bits) / 2u32),
    };
    Ok(AsymptoticModel {
        order,
        c,
        s,
        sigma,
        gamma1,
        gamma2,
        gamma3,
        ratio,
        offset,
        numerator_factor: if alpha == 2 { 1 } else { 2 },
    })
}

/// `cos(π/α)` as `p/q` in lowest terms when it is rational.
fn rational_cos(alpha: u32) -> Option<(i64, i64)> {
    match alpha {
        1 => Some((-1, 1)),
        2 => Some((0, 1)),
        3 => Some((1, 2)),
        _ => None,
    }
}

/// `sin(nπ·cos(π/α))`, exactly zero whenever the argument is a multiple of π.
fn sin_n_pi_q(alpha: u32, n: u64, bits: u32) -> Float {
    if let Some((p, q)) = rational_cos(alpha) {
        if (n as i128 * p as i128) % q as i128 == 0 {
            return Float::new(bits);
        }
    }
    let q = pi_fraction(bits, 1, i64::from(alpha)).cos();
    (pi(bits) * n * q).sin()
}

/// `cos(x·cos(π/α))`, exactly one for α = 2.
fn cos_scaled(alpha: u32, x: &Float, bits: u32) -> Float {
    if rational_cos(alpha) == Some((0, 1)) {
        return Float::with_val(bits, 1);
    }
    let q = pi_fraction(bits, 1, i64::from(alpha)).cos();
    Float::with_val(bits, x * q).cos()
}

/// `δ_n ∼ 8(−1)^{⌊n/2⌋+1} e^{−(π√3/2)n}` for odd `n ≥ 3` at α = 3.
pub fn predict_delta3(n: u64, bits: u32) -> Result<Float> {
    check_precision(bits)?;
    if n.is_multiple_of(2) || n < 3 {
        return Err(SpectraError::Domain(format!(
            "the alpha = 3 offset law needs an odd index n >= 3, got {n}; even roots are exactly n pi"
        )));
    }
    let rate = Float::with_val(bits, pi(bits) * sqrt3(bits)) / 2u32 * n;
    let mag = Float::with_val(bits, -rate).exp() * 8u32;
    Ok(if (n / 2).is_multiple_of(2) { -mag } else { mag })
}

pub fn predict_mu(order: OperatorOrder, n: u64, bits: u32) -> Result<MuPrediction> {
    check_precision(bits)?;
    let alpha = order.alpha();
    if alpha == 1 {
        return Err(unsupported_alpha1());
    }
    if n < 1 {
        return Err(SpectraError::Domain("index n must be at least 1".into()));
    }
    let m = model(order, bits)?;
    let p = pi(bits);
    let sin_a = pi_fraction(bits, 1, i64::from(alpha)).sin();
    let sign = |odd: bool| if odd { -1i32 } else { 1 };

    if alpha == 3 {
        let base = Float::with_val(bits, &p * n);
        let correction = if n.is_multiple_of(2) || n < 3 {
            Float::new(bits)
        } else {
            predict_delta3(n, bits)?
        };
        let error_scale = Float::with_val(bits, -Float::with_val(bits, &p * sqrt3(bits)) * n).exp();
        return Ok(MuPrediction { n, base, correction, error_scale });
    }

    match order.parity() {
        Parity::Odd => {
            let base = Float::with_val(bits, &p * n);
            let decay = Float::with_val(bits, -Float::with_val(bits, &base * &sin_a)).exp();
            let correction = Float::with_val(bits, &m.ratio * sign(n % 2 == 1))
                * decay
                * sin_n_pi_q(alpha, n, bits);
            let sin_2a = pi_fraction(bits, 2, i64::from(alpha)).sin();
            let error_scale = Float::with_val(bits, -Float::with_val(bits, &p * n) * sin_2a).exp();
            Ok(MuPrediction { n, base, correction, error_scale })
        }
        Parity::Even => {
            let base = Float::with_val(bits, &p * n) + &m.offset;
            let decay = Float::with_val(bits, -Float::with_val(bits, &base * &sin_a)).exp();
            // ratio = 2/sin²; the numerator factor rescales the 2
            let coeff = Float::with_val(bits, &m.ratio * m.numerator_factor) / 2u32 * sign(n.is_multiple_of(2));
            let correction = coeff * decay * cos_scaled(alpha, &base, bits);
            let error_scale =
                Float::with_val(bits, -Float::with_val(bits, &p * (2 * n)) * &sin_a).exp();
            Ok(MuPrediction { n, base, correction, error_scale })
        }
    }
}

/// `√(8πα)·(4α/e)^{2α}`.
pub fn predict_lambda_min(alpha: u32, bits: u32) -> Result<Float> {
    check_precision(bits)?;
    if alpha < 1 {
        return Err(SpectraError::Domain("alpha must be at least 1".into()));
    }
    let e = Float::with_val(bits, 1).exp();
    let root = Float::with_val(bits, pi(bits) * (8 * alpha)).sqrt();
    let base = Float::with_val(bits, 4 * alpha) / e;
    Ok(root * base.pow(2 * alpha))
}

/// `(4/(πe))·α`, a rough guide to the index of the lowest eigenvalue.
pub fn predict_first_index(alpha: u32) -> f64 {
    4.0 / (std::f64::consts::PI * std::f64::consts::E) * f64::from(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: u32 = 128;

    fn o(alpha: u32) -> OperatorOrder {
        OperatorOrder::new(alpha).unwrap()
    }

    fn close(x: &Float, want: f64, tol: f64) -> bool {
        (x.to_f64() - want).abs() < tol
    }

    #[test]
    fn alpha5_constants() {
        let m = model(o(5), BITS).unwrap();
        let c1 = (std::f64::consts::PI / 10.0).cos();
        let c3 = (3.0 * std::f64::consts::PI / 10.0).cos();
        assert!(close(&m.gamma1, 2.0 * c1 + 2.0 * c3, 1e-14));
        assert!(close(&m.gamma1, 3.077_683_537_175_253, 1e-12));
        let gap = Float::with_val(BITS, &m.gamma1 - &m.gamma2);
        assert!(close(&gap, (std::f64::consts::PI / 5.0).sin(), 1e-15));
        assert!(close(&gap, c3, 1e-15));
        assert!(close(m.c_at(3), c3, 1e-15));
        assert_eq!(m.numerator_factor, 2);
        assert!(m.offset.is_zero());
    }

    #[test]
    fn alpha4_constants() {
        let m = model(o(4), BITS).unwrap();
        assert!(close(&m.gamma1, 1.0 + 2.0 * std::f64::consts::FRAC_1_SQRT_2, 1e-15));
        assert!(close(&m.gamma3, 1.0, 1e-30));
        assert!(close(&m.offset, std::f64::consts::FRAC_PI_2, 1e-15));
    }

    #[test]
    fn gap_identities() {
        for alpha in 2..=12u32 {
            let m = model(o(alpha), BITS).unwrap();
            assert!(m.gamma1 > m.gamma2 && m.gamma2 > m.gamma3, "alpha {alpha}");
            let gap = Float::with_val(BITS, &m.gamma1 - &m.gamma2);
            let want = pi_fraction(BITS, 1, i64::from(alpha)).sin();
            assert!((gap - want).abs().to_f64() < 1e-35, "alpha {alpha}");
        }
        for alpha in [5u32, 7, 9, 11] {
            let m = model(o(alpha), BITS).unwrap();
            let gap = Float::with_val(BITS, &m.gamma1 - &m.gamma3);
            let want = pi_fraction(BITS, 2, i64::from(alpha)).sin();
            assert!((gap - &want).abs().to_f64() < 1e-35, "alpha {alpha}");
            let two_gap = Float::with_val(BITS, &m.gamma1 - &m.gamma2) * 2u32;
            assert!(two_gap > want);
        }
    }

    #[test]
    fn ratio_has_one_source() {
        for alpha in 2..=9u32 {
            let m = model(o(alpha), BITS).unwrap();
            assert_eq!(m.ratio, laplace_constants(o(alpha), BITS).unwrap().ratio);
        }
        assert!(matches!(model(o(1), BITS), Err(SpectraError::Unsupported(_))));
    }

    #[test]
    fn alpha3_even_predictions_are_exact() {
        for n in (2..=40u64).step_by(2) {
            let p = predict_mu(o(3), n, BITS).unwrap();
            assert!(p.correction.is_zero());
            assert_eq!(p.value(), Float::with_val(BITS, pi(BITS) * n));
        }
    }

    #[test]
    fn delta3_table_values() {
        let d = |n| predict_delta3(n, BITS).unwrap().to_f64();
        assert!((d(3) - 0.002_282_108_2).abs() < 1e-10);
        assert!((d(5) + 0.000_009_889_3).abs() < 1e-10);
        assert!((d(7) - 0.000_000_042_8).abs() < 1e-10);
        assert!(predict_delta3(4, BITS).is_err());
        assert!(predict_delta3(1, BITS).is_err());
    }

    #[test]
    fn alpha2_first_prediction() {
        let p = predict_mu(o(2), 1, BITS).unwrap();
        let want = 2.0 * (-1.5 * std::f64::consts::PI).exp();
        assert!(close(&p.correction, want, 1e-15));
        assert!((p.value().to_f64() - 4.7300).abs() < 1e-3);
    }

    #[test]
    fn corrections_are_bounded_by_the_ratio() {
        for alpha in 4..=9u32 {
            let m = model(o(alpha), BITS).unwrap();
            let sin_a = pi_fraction(BITS, 1, i64::from(alpha)).sin();
            for n in 1..30u64 {
                let p = predict_mu(o(alpha), n, BITS).unwrap();
                let bound = Float::with_val(BITS, -Float::with_val(BITS, &p.base * &sin_a)).exp() * &m.ratio;
                assert!(p.correction.clone().abs() <= bound, "alpha {alpha}, n {n}");
            }
        }
    }

    #[test]
    fn lambda_min_formula() {
        let l1 = predict_lambda_min(1, BITS).unwrap().to_f64();
        let want = (8.0 * std::f64::consts::PI).sqrt() * (4.0 / std::f64::consts::E).powi(2);
        assert!((l1 - want).abs() < 1e-12);
        assert!((l1 - 10.855_53).abs() < 1e-4);
        let ratio1 = std::f64::consts::PI.powi(2) / l1;
        assert!((ratio1 - 0.909).abs() < 1e-3);
        let l3 = predict_lambda_min(3, BITS).unwrap().to_f64();
        let ratio3 = (2.0 * std::f64::consts::PI).powi(6) / l3;
        assert!(ratio3 > 0.94 && ratio3 < 0.97, "{ratio3}");
        // huge α stays finite in the MPFR exponent range
        assert!(predict_lambda_min(200, BITS).unwrap().is_finite());
    }

    #[test]
    fn first_index_hint() {
        assert!((predict_first_index(3) - 1.405).abs() < 1e-3);
        assert!((predict_first_index(1) - 0.468).abs() < 1e-3);
        assert!((predict_first_index(2) - 0.937).abs() < 1e-3);
    }
}
