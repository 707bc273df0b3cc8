//! Closed forms for α = 1, 2, 3.
//!
//! These are independent of the general determinant machinery and serve as
//! its oracles. Hyperbolic functions are never formed directly: every
//! `cosh x` is written as `e^x (1 + e^{−2x}) / 2` so that nothing overflows.

use rug::Float;

use crate::error::{Result, SpectraError};
use crate::numeric::{pi, pi_fraction, sqrt3, Complex};
use crate::scaled::ScaledValue;

/// Free parameters of the α = 3 matrix.
///
/// For the clamped problem `a = e^{μ√3/2}`, `b = 1/a` and `ω = e^{iμ/2}`,
/// but the determinant identity holds for arbitrary complex values.
#[derive(Debug, Clone)]
pub struct Det3Parameters {
    pub a: Complex,
    pub b: Complex,
    pub omega: Complex,
}

impl Det3Parameters {
    pub fn new(a: Complex, b: Complex, omega: Complex) -> Result<Self> {
        if omega.is_zero() {
            return Err(SpectraError::Domain("omega must be nonzero".into()));
        }
        Ok(Det3Parameters { a, b, omega })
    }

    /// The values taken on the real μ-axis.
    pub fn at_mu(mu: &Float) -> Self {
        let bits = mu.prec();
        let x = Float::with_val(bits, mu * sqrt3(bits)) / 2u32;
        let a = Float::with_val(bits, x.exp_ref());
        let b = Float::with_val(bits, (-x).exp());
        let half = Float::with_val(bits, mu / 2u32);
        Det3Parameters {
            a: Complex::from_real(&a),
            b: Complex::from_real(&b),
            omega: Complex::cis(&half),
        }
    }
}

/// `det A_3` as a polynomial in `a`, `b`, `ω`, `ω⁻¹`.
pub fn det3_general(p: &Det3Parameters) -> Result<Complex> {
    if p.omega.is_zero() {
        return Err(SpectraError::Domain("omega must be nonzero".into()));
    }
    let bits = p.omega.prec();
    let k = |v: i32| Float::with_val(bits, v);
    let w = &p.omega;
    let wi = w.inv();
    let minus = w - &wi;
    let plus = w + &wi;
    let w2 = w * w;
    let wi2 = &wi * &wi;
    let ab = &p.a * &p.b;
    let a_plus_b = &p.a + &p.b;
    let squares = &(&p.a * &p.a) + &(&p.b * &p.b);

    let t1 = (&(&ab * &a_plus_b) * &minus).scale(&k(12));
    let t2 = (&(&squares * &minus) * &plus).scale(&k(-3));
    let inner = &(&w2 + &wi2) - &Complex::from_real(&k(8));
    let t3 = (&(&(&ab * &minus) * &plus) * &inner).scale(&k(3));
    let t4 = (&a_plus_b * &minus).scale(&k(12));
    Ok(&(&t1 + &t2) + &(&t3 + &t4))
}

/// Exponentially small pieces `e^{−x/2}`, `e^{−x}`, `e^{−2x}` for `x = μ√3`.
struct Decays {
    x: Float,
    half: Float,
    one: Float,
    two: Float,
}

fn decays(x: Float) -> Decays {
    let bits = x.prec();
    let half = (Float::with_val(bits, -&x) / 2u32).exp();
    let one = Float::with_val(bits, half.square_ref());
    let two = Float::with_val(bits, one.square_ref());
    Decays { x, half, one, two }
}

/// The bracket of the α = 3 determinant,
/// `4cosh(μ√3/2) − cosh(μ√3)cos(μ/2) + cos(μ/2)cos μ − 4cos(μ/2)`.
///
/// Its zeros are the odd-index eigenvalues.
pub fn det3_bracket(mu: &Float) -> ScaledValue {
    let bits = mu.prec();
    let d = decays(Float::with_val(bits, mu * sqrt3(bits)));
    let c_half = Float::with_val(bits, mu / 2u32).cos();
    let c = Float::with_val(bits, mu.cos_ref());

    // e^{x}·[2e^{−x/2}(1 + e^{−x}) − cos(μ/2)(1 + e^{−2x})/2 + e^{−x}cos(μ/2)(cos μ − 4)]
    let first = Float::with_val(bits, &d.one + 1u32) * &d.half * 2u32;
    let second = Float::with_val(bits, &d.two + 1u32) * &c_half / 2u32;
    let third = Float::with_val(bits, &c - 4u32) * &c_half * &d.one;
    let m = first - second + third;
    ScaledValue::new(Complex::from_real(&m), d.x)
}

/// `det A_3(μ) = 24 i sin(μ/2) · bracket`.
pub fn det3_mu(mu: &Float) -> ScaledValue {
    let bits = mu.prec();
    let s = Float::with_val(bits, mu / 2u32).sin() * 24u32;
    det3_bracket(mu).mul_complex(&Complex::new(Float::new(bits), s))
}

/// `cos(μ/2) − 4cosh(μ√3/2)/cosh(μ√3) − (cos(μ/2)cos μ − 4cos(μ/2))/cosh(μ√3)`.
///
/// Vanishes exactly at the odd-index eigenvalues of α = 3.
pub fn odd_equation_residual3(mu: &Float) -> Float {
    let bits = mu.prec();
    let d = decays(Float::with_val(bits, mu * sqrt3(bits)));
    let c_half = Float::with_val(bits, mu / 2u32).cos();
    let c = Float::with_val(bits, mu.cos_ref());
    let denom = Float::with_val(bits, &d.two + 1u32);
    // 4cosh(x/2)/cosh x = 4e^{−x/2}(1 + e^{−x})/(1 + e^{−2x})
    let ratio = Float::with_val(bits, &d.one + 1u32) * &d.half * 4u32 / &denom;
    // 1/cosh x = 2e^{−x}/(1 + e^{−2x})
    let sech = Float::with_val(bits, &d.one * 2u32) / &denom;
    let tail = Float::with_val(bits, &c - 4u32) * &c_half * &sech;
    c_half - ratio - tail
}

/// The α = 3 matrix written out entry by entry in `a`, `b`, `ω`, with
/// `ε = e^{πi/6}`. Rows are returned top to bottom.
pub fn det3_matrix(p: &Det3Parameters) -> Result<Vec<Vec<Complex>>> {
    if p.omega.is_zero() {
        return Err(SpectraError::Domain("omega must be nonzero".into()));
    }
    let bits = p.omega.prec();
    let w = &p.omega;
    let lower = [
        w * &p.a,
        w.powi(2),
        w * &p.b,
        &w.inv() * &p.b,
        w.powi(-2),
        &w.inv() * &p.a,
    ];
    let rows = (0..6)
        .map(|r| {
            let power = (r % 3) as i64;
            (0..6)
                .map(|c| {
                    let e = Complex::cis(&pi_fraction(bits, power * (2 * c as i64 + 1), 6));
                    if r < 3 {
                        e
                    } else {
                        &lower[c] * &e
                    }
                })
                .collect()
        })
        .collect();
    Ok(rows)
}

/// Determinant as the signed sum over all permutations. Exponential cost;
/// meant as an independent check on small matrices.
pub fn leibniz_determinant(rows: &[Vec<Complex>]) -> Complex {
    let bits = rows.first().map_or(53, |r| r[0].prec());
    let mut perm: Vec<usize> = (0..rows.len()).collect();
    let mut acc = Complex::zero(bits);
    permute(rows, &mut perm, 0, true, &mut acc);
    acc
}

fn permute(rows: &[Vec<Complex>], perm: &mut [usize], k: usize, even: bool, acc: &mut Complex) {
    if k == perm.len() {
        let mut term = Complex::one(acc.prec());
        for (r, &c) in perm.iter().enumerate() {
            term = &term * &rows[r][c];
        }
        *acc = if even { &*acc + &term } else { &*acc - &term };
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(rows, perm, k + 1, even == (i == k), acc);
        perm.swap(k, i);
    }
}

/// `det A_2(μ) = 8(1 − cos μ cosh μ)`, up to the constant phase of the
/// general determinant.
pub fn det2_mu(mu: &Float) -> ScaledValue {
    let bits = mu.prec();
    let e1 = Float::with_val(bits, -mu).exp();
    let e2 = Float::with_val(bits, e1.square_ref());
    let c = Float::with_val(bits, mu.cos_ref());
    // e^{μ}·8(e^{−μ} − cos μ (1 + e^{−2μ})/2)
    let m = (e1 - Float::with_val(bits, &e2 + 1u32) * &c / 2u32) * 8u32;
    ScaledValue::new(Complex::from_real(&m), mu.clone())
}

/// `cos μ − 1/cosh μ`; its zeros are the α = 2 eigenvalues.
pub fn eq2_residual(mu: &Float) -> Float {
    let bits = mu.prec();
    let e1 = Float::with_val(bits, -mu).exp();
    let e2 = Float::with_val(bits, e1.square_ref());
    let sech = Float::with_val(bits, &e1 * 2u32) / (e2 + 1u32);
    Float::with_val(bits, mu.cos_ref()) - sech
}

/// `λ_{n,1} = (nπ)²`.
pub fn spectrum1(n: u64, bits: u32) -> Result<Float> {
    if n < 1 {
        return Err(SpectraError::Domain("index n must be at least 1".into()));
    }
    let m = pi(bits) * n;
    Ok(Float::with_val(bits, m.square_ref()))
}
