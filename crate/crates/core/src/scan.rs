//! Sampling of the characteristic matrix along the μ-axis.
//!
//! Each row reports `ln |det|` of the column-scaled matrix and its smallest
//! singular value. Both dip sharply at eigenvalues; the singular value is
//! what the plots show, since it is well defined for any matrix and stays
//! bounded.

use rayon::prelude::*;
use rug::Float;
use serde::Serialize;

use crate::eigensolver::grid_step;
use crate::error::{Result, SpectraError};
use crate::numeric::check_precision;
use crate::spectral_matrix::{build_matrix, mantissa_determinant, singular_values, OperatorOrder};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub mu: f64,
    pub log_abs_det_scaled: f64,
    pub smallest_singular_value: f64,
}

/// `lo, lo + step, …` up to `hi` inclusive; `lo = hi` gives a single point.
pub fn mu_grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi >= lo) {
        return Err(SpectraError::Domain(format!("invalid mu range {lo}:{hi}")));
    }
    if !(step > 0.0) || step > grid_step() {
        return Err(SpectraError::Configuration(format!(
            "step must lie in (0, pi/8], got {step}"
        )));
    }
    let n = ((hi - lo) / step * (1.0 + 1e-12)).floor() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

pub fn sample(order: OperatorOrder, mu: f64, bits: u32) -> Result<ScanRow> {
    let m = build_matrix(order, &Float::with_val(bits, mu), bits)?;
    let det = mantissa_determinant(&m).abs();
    let sv = singular_values(&m)?;
    Ok(ScanRow {
        mu,
        log_abs_det_scaled: det.ln().to_f64(),
        smallest_singular_value: sv.smallest().to_f64(),
    })
}

pub fn determinant_scan(order: OperatorOrder, lo: f64, hi: f64, step: f64, bits: u32) -> Result<Vec<ScanRow>> {
    check_precision(bits)?;
    mu_grid(lo, hi, step)?
        .into_par_iter()
        .map(|mu| sample(order, mu, bits))
        .collect()
}

fn sigma(order: OperatorOrder, mu: f64, bits: u32) -> Result<f64> {
    Ok(sample(order, mu, bits)?.smallest_singular_value)
}

/// Golden-section search for the minimum of the smallest singular value on `[a, b]`.
fn golden_minimum(order: OperatorOrder, mut a: f64, mut b: f64, bits: u32) -> Result<f64> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let mut fc = sigma(order, c, bits)?;
    let mut fd = sigma(order, d, bits)?;
    while b - a > 1e-9 * b.max(1.0) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = sigma(order, c, bits)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = sigma(order, d, bits)?;
        }
    }
    Ok(0.5 * (a + b))
}

/// Interior grid points where the smallest singular value is a strict local
/// minimum, each refined by golden-section search between its neighbours.
pub fn scan_minima(order: OperatorOrder, rows: &[ScanRow], bits: u32) -> Result<Vec<f64>> {
    let sv = |i: usize| rows[i].smallest_singular_value;
    let picks: Vec<usize> = (1..rows.len().saturating_sub(1))
        .filter(|&i| sv(i) < sv(i - 1) && sv(i) < sv(i + 1))
        .collect();
    picks
        .into_par_iter()
        .map(|i| golden_minimum(order, rows[i - 1].mu, rows[i + 1].mu, bits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn o(alpha: u32) -> OperatorOrder {
        OperatorOrder::new(alpha).unwrap()
    }

    #[test]
    fn grid_shapes() {
        assert_eq!(mu_grid(2.0, 2.0, 0.1).unwrap(), vec![2.0]);
        let g = mu_grid(5.0, 40.0, 0.1).unwrap();
        assert_eq!(g.len(), 351);
        assert!((g[350] - 40.0).abs() < 1e-12);
        assert!(mu_grid(1.0, 2.0, 0.5).is_err());
        assert!(mu_grid(1.0, 2.0, 0.0).is_err());
        assert!(mu_grid(3.0, 2.0, 0.1).is_err());
        assert!(mu_grid(0.0, 2.0, 0.1).is_err());
    }

    #[test]
    fn alpha1_minima_at_multiples_of_pi() {
        let rows = determinant_scan(o(1), 1.0, 10.0, 0.1, 53).unwrap();
        let minima = scan_minima(o(1), &rows, 53).unwrap();
        assert_eq!(minima.len(), 3);
        for (k, m) in minima.iter().enumerate() {
            assert!((m - (k + 1) as f64 * PI).abs() < 1e-6, "{m}");
        }
    }

    #[test]
    fn alpha2_minima_near_shifted_multiples() {
        let rows = determinant_scan(o(2), 1.0, 20.0, 0.1, 53).unwrap();
        let minima = scan_minima(o(2), &rows, 53).unwrap();
        assert_eq!(minima.len(), 5);
        for (k, m) in minima.iter().enumerate() {
            let base = PI / 2.0 + (k + 1) as f64 * PI;
            assert!((m - base).abs() < 2e-2, "{m} vs {base}");
        }
    }

    #[test]
    fn log_det_dips_with_the_singular_value() {
        let at_root = sample(o(3), 2.0 * PI, 64).unwrap();
        let off = sample(o(3), 2.0 * PI + 0.3, 64).unwrap();
        assert!(at_root.log_abs_det_scaled < off.log_abs_det_scaled - 5.0);
        assert!(at_root.smallest_singular_value < 1e-10);
    }
}
