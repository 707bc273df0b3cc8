//! Vandermonde minors of the top block and the constants of the two-term
//! Laplace expansion of `det A_α(μ)`.

use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use super::OperatorOrder;
use crate::error::{Result, SpectraError};
use crate::numeric::{check_precision, pi_fraction, Complex};

/// Determinant of the first α rows of `A_α` restricted to `columns`
/// (1-based, any order; the minor is taken with columns ascending).
pub fn vandermonde_minor(order: OperatorOrder, columns: &[usize], bits: u32) -> Result<Complex> {
    check_precision(bits)?;
    let alpha = order.alpha() as usize;
    if columns.len() != alpha {
        return Err(SpectraError::Domain(format!(
            "a minor of A_{alpha} needs {alpha} columns, got {}",
            columns.len()
        )));
    }
    let mut cols = columns.to_vec();
    cols.sort_unstable();
    if cols.windows(2).any(|w| w[0] == w[1]) {
        return Err(SpectraError::Domain("columns must be distinct".into()));
    }
    if cols[0] == 0 || cols[alpha - 1] > 2 * alpha {
        return Err(SpectraError::Domain(format!(
            "columns must lie in 1..={}",
            2 * alpha
        )));
    }
    let etas: Vec<Complex> = cols.iter().map(|&c| order.direction(c - 1, bits)).collect();
    let mut v = Complex::one(bits);
    for l in 0..alpha {
        for j in 0..l {
            v = &v * &(&etas[l] - &etas[j]);
        }
    }
    Ok(v)
}

/// Chord `ϱ_d = 2 sin(dπ/(2α))` between characteristic directions `d` steps apart.
pub fn rho(order: OperatorOrder, d: u32, bits: u32) -> Result<Float> {
    check_precision(bits)?;
    let alpha = order.alpha();
    if d == 0 || d > 2 * alpha - 1 {
        return Err(SpectraError::Domain(format!(
            "rho index must lie in 1..={}, got {d}",
            2 * alpha - 1
        )));
    }
    let angle = pi_fraction(bits, i64::from(d), 2 * i64::from(alpha));
    Ok(angle.sin() * 2u32)
}

#[derive(Debug, Clone, Serialize)]
pub struct LaplaceConstants {
    pub alpha: OperatorOrder,
    /// Magnitude of the leading Laplace coefficient; known for α ∈ {4, 5}.
    #[serde(skip)]
    pub s: Option<Float>,
    /// Magnitude of the second coefficient; known for α ∈ {4, 5}.
    #[serde(skip)]
    pub t: Option<Float>,
    /// `−K₂/K₁ = 2 / sin²(π/(2α))`.
    #[serde(skip)]
    pub ratio: Float,
    /// `ϱ_1 … ϱ_{2α−1}`.
    #[serde(skip)]
    pub rho: Vec<Float>,
}

impl LaplaceConstants {
    /// `2T/S`, when both are available.
    pub fn ratio_from_products(&self) -> Option<Float> {
        match (&self.s, &self.t) {
            (Some(s), Some(t)) => Some(Float::with_val(s.prec(), t * 2u32) / s),
            _ => None,
        }
    }
}

fn rho_product(rho: &[Float], powers: &[(usize, u32)], bits: u32) -> Float {
    let mut acc = Float::with_val(bits, 1);
    for &(d, p) in powers {
        acc *= Float::with_val(bits, (&rho[d - 1]).pow(p));
    }
    acc
}

pub fn laplace_constants(order: OperatorOrder, bits: u32) -> Result<LaplaceConstants> {
    check_precision(bits)?;
    let alpha = order.alpha();
    if alpha < 2 {
        return Err(SpectraError::Unsupported(
            "alpha = 1 has no second-order term".into(),
        ));
    }
    let rho: Vec<Float> = (1..2 * alpha)
        .map(|d| self::rho(order, d, bits))
        .collect::<Result<_>>()?;

    let (s, t) = match alpha {
        5 => (
            Some(rho_product(&rho, &[(1, 8), (2, 6), (3, 4), (4, 2)], bits)),
            Some(rho_product(&rho, &[(1, 6), (2, 6), (3, 4), (4, 2), (5, 2)], bits)),
        ),
        4 => (
            Some(rho_product(&rho, &[(1, 6), (2, 4), (3, 2)], bits)),
            Some(rho_product(&rho, &[(1, 4), (2, 4), (3, 2), (4, 2)], bits)),
        ),
        _ => (None, None),
    };

    let sin = pi_fraction(bits, 1, 2 * i64::from(alpha)).sin();
    let ratio = Float::with_val(bits, sin.square_ref()).recip() * 2u32;

    Ok(LaplaceConstants {
        alpha: order,
        s,
        t,
        ratio,
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{rel_diff, sqrt3};

    const BITS: u32 = 128;

    fn o(alpha: u32) -> OperatorOrder {
        OperatorOrder::new(alpha).unwrap()
    }

    #[test]
    fn minors_of_alpha3() {
        let r3 = sqrt3(BITS);
        let eps = Complex::cis(&pi_fraction(BITS, 1, 6));
        let two_r3 = Float::with_val(BITS, &r3 * 2u32);

        // |V_135| = ϱ_2 ϱ_4 ϱ_2 = 3√3 and V_246 = −V_135
        let v135 = vandermonde_minor(o(3), &[1, 3, 5], BITS).unwrap();
        let want = Complex::from_real(&Float::with_val(BITS, &r3 * 3u32));
        assert!(rel_diff(&v135, &want) < 1e-35);
        let v246 = vandermonde_minor(o(3), &[2, 4, 6], BITS).unwrap();
        assert!(rel_diff(&v246, &-&want) < 1e-35);

        for cols in [[1, 3, 6], [2, 3, 5], [1, 4, 5]] {
            let v = vandermonde_minor(o(3), &cols, BITS).unwrap();
            assert!(rel_diff(&v, &eps.powi(2).scale(&two_r3)) < 1e-35, "{cols:?}");
        }
        for cols in [[2, 4, 5], [1, 4, 6], [2, 3, 6]] {
            let v = vandermonde_minor(o(3), &cols, BITS).unwrap();
            assert!(rel_diff(&v, &eps.powi(4).scale(&two_r3)) < 1e-35, "{cols:?}");
        }
        for cols in [[2, 5, 6], [3, 4, 6], [1, 2, 4]] {
            let v = vandermonde_minor(o(3), &cols, BITS).unwrap();
            assert!(rel_diff(&v, &eps.powi(8).scale(&two_r3)) < 1e-35, "{cols:?}");
        }
        for cols in [[1, 3, 4], [1, 2, 5], [3, 5, 6]] {
            let v = vandermonde_minor(o(3), &cols, BITS).unwrap();
            assert!(rel_diff(&v, &eps.powi(10).scale(&two_r3)) < 1e-35, "{cols:?}");
        }
        for cols in [[1, 2, 6], [2, 3, 4], [4, 5, 6]] {
            let v = vandermonde_minor(o(3), &cols, BITS).unwrap();
            assert!(rel_diff(&v, &Complex::from_real(&r3)) < 1e-35, "{cols:?}");
        }
        for cols in [[3, 4, 5], [1, 5, 6], [1, 2, 3]] {
            let v = vandermonde_minor(o(3), &cols, BITS).unwrap();
            assert!(rel_diff(&v, &Complex::from_real(&-r3.clone())) < 1e-35, "{cols:?}");
        }
    }

    #[test]
    fn minor_rejects_bad_column_sets() {
        assert!(vandermonde_minor(o(3), &[1, 2], BITS).is_err());
        assert!(vandermonde_minor(o(3), &[1, 1, 2], BITS).is_err());
        assert!(vandermonde_minor(o(3), &[0, 1, 2], BITS).is_err());
        assert!(vandermonde_minor(o(3), &[1, 2, 7], BITS).is_err());
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(o(5), 5, BITS).unwrap().to_f64(), 2.0);
        // 2 sin(π/10) = (√5 − 1)/2
        let golden = (Float::with_val(BITS, 5).sqrt() - 1u32) / 2u32;
        let r1 = rho(o(5), 1, BITS).unwrap();
        assert!((r1 - golden).abs().to_f64() < 1e-35);
        let r = rho(o(4), 3, BITS).unwrap().to_f64();
        assert!((r - 2.0 * (3.0 * std::f64::consts::PI / 8.0).sin()).abs() < 1e-15);
        assert!(rho(o(5), 0, BITS).is_err());
        assert!(rho(o(5), 10, BITS).is_err());
    }

    #[test]
    fn ratio_values_and_identity() {
        let c5 = laplace_constants(o(5), BITS).unwrap();
        assert!((c5.ratio.to_f64() - 20.944_271_909_999_16).abs() < 1e-12);
        let c4 = laplace_constants(o(4), BITS).unwrap();
        let s8 = (std::f64::consts::PI / 8.0).sin();
        assert!((c4.ratio.to_f64() - 2.0 / (s8 * s8)).abs() < 1e-12);
        for c in [&c4, &c5] {
            let via = c.ratio_from_products().unwrap();
            let rel = ((via - &c.ratio) / &c.ratio).abs().to_f64();
            assert!(rel < 1e-35);
        }
        let c7 = laplace_constants(o(7), BITS).unwrap();
        assert!(c7.s.is_none() && c7.t.is_none());
        assert!(matches!(
            laplace_constants(o(1), BITS),
            Err(SpectraError::Unsupported(_))
        ));
    }
}
