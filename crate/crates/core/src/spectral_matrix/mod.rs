//! The characteristic matrix `A_α(μ)` of the clamped problem.
//!
//! Solutions of `(−1)^α u^{(2α)} = μ^{2α} u` are combinations of
//! `exp(μ η_j x)` where the `η_j` are the `2α`-th roots of `(−1)^α`.
//! Imposing `u^{(r)}(0) = u^{(r)}(1) = 0` for `r < α` gives the matrix with
//! rows `η_j^r` (at `x = 0`) and `e^{μ η_j} η_j^r` (at `x = 1`).
//!
//! Directions are indexed in units of `π/(2α)`: for odd α column `j` uses
//! `η_j = e^{iπ(2j+1)/(2α)}`, for even α `η_j = e^{iπ j/α}`.

mod determinant;
mod laplace;
mod svd;

use rug::Float;
use serde::Serialize;

use crate::error::{Result, SpectraError};
use crate::numeric::{check_precision, pi_fraction, Complex};
use crate::scaled::ScaledValue;

pub use determinant::{
    mantissa_determinant, normalized_real_det, scaled_determinant, CharacteristicDeterminant,
};
pub use laplace::{laplace_constants, rho, vandermonde_minor, LaplaceConstants};
pub use svd::{singular_values, smallest_singular_value, SingularValues};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

/// The half-order α of the operator `(−1)^α d^{2α}/dx^{2α}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OperatorOrder {
    alpha: u32,
}

impl OperatorOrder {
    pub fn new(alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(SpectraError::Domain("alpha must be at least 1".into()));
        }
        Ok(OperatorOrder { alpha })
    }

    pub fn alpha(self) -> u32 {
        self.alpha
    }

    pub fn parity(self) -> Parity {
        if self.alpha % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    /// `k` with `α = 2k + 1` (odd) or `α = 2k` (even).
    pub fn k(self) -> u32 {
        self.alpha / 2
    }

    /// Matrix dimension `2α`.
    pub fn dim(self) -> usize {
        2 * self.alpha as usize
    }

    /// Angle of `η_j` in units of `π/(2α)`.
    pub fn direction_index(self, j: usize) -> i64 {
        match self.parity() {
            Parity::Odd => 2 * j as i64 + 1,
            Parity::Even => 2 * j as i64,
        }
    }

    /// `e^{iπ m/(2α)}`, exact at the four axis points.
    pub fn unit_root(self, m: i64, bits: u32) -> Complex {
        let a = i64::from(self.alpha);
        let m = m.rem_euclid(4 * a);
        if m == 0 {
            Complex::one(bits)
        } else if m == a {
            Complex::from_f64(bits, 0.0, 1.0)
        } else if m == 2 * a {
            Complex::from_f64(bits, -1.0, 0.0)
        } else if m == 3 * a {
            Complex::from_f64(bits, 0.0, -1.0)
        } else {
            Complex::cis(&pi_fraction(bits, m, 2 * a))
        }
    }

    /// The characteristic direction `η_j`.
    pub fn direction(self, j: usize, bits: u32) -> Complex {
        self.unit_root(self.direction_index(j), bits)
    }
}

/// `A_α(μ)` with the growth of every column factored into an exponent.
///
/// Column `j` of the represented matrix is `entries[.][j] · e^{column_exponents[j]}`
/// with `column_exponents[j] = μ·max(0, Re η_j)`, so every mantissa has
/// modulus at most one.
#[derive(Debug, Clone)]
pub struct ScaledComplexMatrix {
    order: OperatorOrder,
    mu: Float,
    entries: Vec<Complex>,
    column_exponents: Vec<Float>,
    precision_bits: u32,
}

impl ScaledComplexMatrix {
    pub fn order(&self) -> OperatorOrder {
        self.order
    }

    pub fn mu(&self) -> &Float {
        &self.mu
    }

    pub fn dim(&self) -> usize {
        self.order.dim()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn mantissa(&self, row: usize, col: usize) -> &Complex {
        &self.entries[row * self.dim() + col]
    }

    pub fn mantissa_rows(&self) -> Vec<Vec<Complex>> {
        let n = self.dim();
        (0..n)
            .map(|r| self.entries[r * n..(r + 1) * n].to_vec())
            .collect()
    }

    pub fn column_exponents(&self) -> &[Float] {
        &self.column_exponents
    }

    /// Sum of the column exponents, the scale of the determinant.
    pub fn total_exponent(&self) -> Float {
        let mut s = Float::new(self.precision_bits);
        for e in &self.column_exponents {
            s += e;
        }
        s
    }

    /// Entry of the represented (unscaled) matrix.
    pub fn entry(&self, row: usize, col: usize) -> ScaledValue {
        ScaledValue::new(
            self.mantissa(row, col).clone(),
            self.column_exponents[col].clone(),
        )
    }

    /// Same matrix with column `col` replaced; used by tests and callers that
    /// need a degenerate variant.
    pub fn with_zero_column(mut self, col: usize) -> Self {
        let n = self.dim();
        for r in 0..n {
            self.entries[r * n + col] = Complex::zero(self.precision_bits);
        }
        self
    }
}

/// Builds `A_α(μ)` at `precision_bits`.
pub fn build_matrix(
    order: OperatorOrder,
    mu: &Float,
    precision_bits: u32,
) -> Result<ScaledComplexMatrix> {
    check_precision(precision_bits)?;
    if !mu.is_finite() || *mu <= 0 {
        return Err(SpectraError::Domain(format!(
            "mu must be positive, got {}",
            mu.to_f64()
        )));
    }
    let bits = precision_bits;
    let mu = Float::with_val(bits, mu);
    let alpha = order.alpha() as usize;
    let n = order.dim();
    let zero = Float::new(bits);
    let mut entries = vec![Complex::zero(bits); n * n];
    let mut column_exponents = Vec::with_capacity(n);

    for j in 0..n {
        let m = order.direction_index(j);
        let eta = order.unit_root(m, bits);
        let re_pos = Float::with_val(bits, eta.re.max_ref(&zero));
        let re_neg = Float::with_val(bits, eta.re.min_ref(&zero));
        let exponent = Float::with_val(bits, &mu * &re_pos);

        // x = 0 rows: η^r·e^{−μ max(0, Re η)}
        let top = Float::with_val(bits, -&exponent).exp();
        // x = 1 rows: e^{iμ Im η}·e^{μ min(0, Re η)}·η^r
        let phase = Float::with_val(bits, &mu * &eta.im);
        let decay = Float::with_val(bits, &mu * &re_neg).exp();
        let boundary = Complex::from_polar(&decay, &phase);
        column_exponents.push(exponent);

        for r in 0..alpha {
            let power = order.unit_root(m * r as i64, bits);
            entries[r * n + j] = power.scale(&top);
            entries[(alpha + r) * n + j] = &boundary * &power;
        }
    }

    Ok(ScaledComplexMatrix {
        order,
        mu,
        entries,
        column_exponents,
        precision_bits: bits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rel_diff;

    fn f(bits: u32, v: f64) -> Float {
        Float::with_val(bits, v)
    }

    #[test]
    fn order_decomposition() {
        let o = OperatorOrder::new(7).unwrap();
        assert_eq!(o.parity(), Parity::Odd);
        assert_eq!(2 * o.k() + 1, 7);
        let e = OperatorOrder::new(6).unwrap();
        assert_eq!(e.parity(), Parity::Even);
        assert_eq!(2 * e.k(), 6);
        assert!(OperatorOrder::new(0).is_err());
    }

    #[test]
    fn rejects_nonpositive_mu_and_low_precision() {
        let o = OperatorOrder::new(3).unwrap();
        assert!(matches!(
            build_matrix(o, &f(64, 0.0), 64),
            Err(SpectraError::Domain(_))
        ));
        assert!(matches!(
            build_matrix(o, &f(64, -1.0), 64),
            Err(SpectraError::Domain(_))
        ));
        assert!(matches!(
            build_matrix(o, &f(64, 1.0), 40),
            Err(SpectraError::Configuration(_))
        ));
    }

    #[test]
    fn alpha3_bottom_left_entry_is_a_omega() {
        let bits = 128;
        let mu = f(bits, 7.3);
        let m = build_matrix(OperatorOrder::new(3).unwrap(), &mu, bits).unwrap();
        let a = Float::with_val(bits, &mu * crate::numeric::sqrt3(bits) / 2u32).exp();
        let omega = Complex::cis(&Float::with_val(bits, &mu / 2u32));
        let want = omega.scale(&a);
        let got = m.entry(3, 0).to_complex();
        assert!(rel_diff(&got, &want) < 1e-30);
    }

    #[test]
    fn alpha1_at_pi_has_two_equal_rows() {
        let bits = 64;
        let m = build_matrix(OperatorOrder::new(1).unwrap(), &crate::numeric::pi(bits), bits)
            .unwrap();
        // [[1, 1], [e^{iπ}, e^{-iπ}]]
        for j in 0..2 {
            let v = m.entry(1, j).to_complex();
            assert!((v.re.to_f64() + 1.0).abs() < 1e-15);
            assert!(v.im.to_f64().abs() < 1e-15);
        }
    }

    #[test]
    fn alpha5_second_row_is_odd_powers_of_epsilon() {
        let bits = 128;
        let o = OperatorOrder::new(5).unwrap();
        let m = build_matrix(o, &f(bits, 3.0), bits).unwrap();
        let eps = Complex::cis(&pi_fraction(bits, 1, 10));
        for j in 0..10 {
            let want = eps.powi(2 * j as i64 + 1);
            assert!(rel_diff(&m.entry(1, j).to_complex(), &want) < 1e-35, "column {j}");
        }
    }

    #[test]
    fn column_exponents_follow_real_parts() {
        let bits = 128;
        let mu = f(bits, 2.5);
        for alpha in 1..=6 {
            let o = OperatorOrder::new(alpha).unwrap();
            let m = build_matrix(o, &mu, bits).unwrap();
            for j in 0..o.dim() {
                let eta = o.direction(j, bits);
                let want = (2.5 * eta.re.to_f64()).max(0.0);
                assert!((m.column_exponents()[j].to_f64() - want).abs() < 1e-14);
                for r in 0..o.dim() {
                    assert!(m.mantissa(r, j).abs().to_f64() <= 1.0 + 1e-30);
                }
            }
        }
    }

    #[test]
    fn purely_imaginary_directions_have_exact_zero_real_part() {
        // α = 3: η_1 = i, η_4 = −i
        let o = OperatorOrder::new(3).unwrap();
        assert!(o.direction(1, 64).re.is_zero());
        assert!(o.direction(4, 64).re.is_zero());
    }
}
