//! Fits used to check asymptotic statements against computed data.

use rayon::prelude::*;
use rug::Float;

use crate::asymptotics::model;
use crate::error::{Result, SpectraError};
use crate::numeric::check_precision;
use crate::spectral_matrix::{CharacteristicDeterminant, OperatorOrder, Parity};

/// Least-squares fit `F(μ) ≈ K₁·t(μ) + K₂·e^{−(γ₁−γ₂)μ}·t(sμ)` with
/// `t = sin` (odd α) or `cos` (even α).
///
/// `F` is the determinant divided by `e^{γ₁μ}`, so `K₁`, `K₂` are the two
/// leading Laplace coefficients up to a common factor.
#[derive(Debug, Clone)]
pub struct RatioFit {
    pub k1: Float,
    pub k2: Float,
    /// `−K₂/K₁`.
    pub ratio: Float,
    /// Largest misfit relative to `max |F|` on the window.
    pub max_residual: f64,
    pub samples: usize,
}

pub fn fit_laplace_ratio(
    order: OperatorOrder,
    mu_lo: f64,
    mu_hi: f64,
    samples: usize,
    bits: u32,
) -> Result<RatioFit> {
    check_precision(bits)?;
    if !(mu_lo > 0.0 && mu_hi > mu_lo) || samples < 3 {
        return Err(SpectraError::Domain(
            "need 0 < mu_lo < mu_hi and at least three samples".into(),
        ));
    }
    let m = model(order, bits)?;
    let gap = Float::with_val(bits, &m.gamma1 - &m.gamma2);
    // s_{2k−1} (odd α) or s_{k−1} (even α); both sit at position k − 1
    let freq = m.s[order.k() as usize - 1].clone();
    let trig = |x: Float| match order.parity() {
        Parity::Odd => x.sin(),
        Parity::Even => x.cos(),
    };
    let det = CharacteristicDeterminant::new(order, bits)?;

    let rows: Vec<(Float, Float, Float)> = (0..samples)
        .into_par_iter()
        .map(|i| {
            let t = mu_lo + (mu_hi - mu_lo) * i as f64 / (samples - 1) as f64;
            let mu = Float::with_val(bits, t);
            let f = det.eval(&mu)?;
            let b1 = trig(mu.clone());
            let decay = Float::with_val(bits, -Float::with_val(bits, &gap * &mu)).exp();
            let b2 = trig(Float::with_val(bits, &freq * &mu)) * decay;
            Ok((b1, b2, f))
        })
        .collect::<Result<_>>()?;

    // normal equations of the two-column least-squares problem
    let mut s11 = Float::new(bits);
    let mut s12 = Float::new(bits);
    let mut s22 = Float::new(bits);
    let mut t1 = Float::new(bits);
    let mut t2 = Float::new(bits);
    for (b1, b2, f) in &rows {
        s11 += Float::with_val(bits, b1 * b1);
        s12 += Float::with_val(bits, b1 * b2);
        s22 += Float::with_val(bits, b2 * b2);
        t1 += Float::with_val(bits, b1 * f);
        t2 += Float::with_val(bits, b2 * f);
    }
    let det2 = Float::with_val(bits, &s11 * &s22) - Float::with_val(bits, &s12 * &s12);
    if det2.is_zero() {
        return Err(SpectraError::numerical("fit basis is degenerate on this window"));
    }
    let k1 = (Float::with_val(bits, &t1 * &s22) - Float::with_val(bits, &t2 * &s12)) / &det2;
    let k2 = (Float::with_val(bits, &t2 * &s11) - Float::with_val(bits, &t1 * &s12)) / &det2;
    let ratio = -Float::with_val(bits, &k2 / &k1);

    let mut worst = Float::new(bits);
    let mut scale = Float::new(bits);
    for (b1, b2, f) in &rows {
        let model_value = Float::with_val(bits, &k1 * b1) + Float::with_val(bits, &k2 * b2);
        let miss = Float::with_val(bits, f - &model_value).abs();
        worst = worst.max(&miss);
        scale = scale.max(&Float::with_val(bits, f.abs_ref()));
    }
    let max_residual = if scale.is_zero() { 0.0 } else { (worst / scale).to_f64() };
    Ok(RatioFit { k1, k2, ratio, max_residual, samples })
}

/// Ordinary least-squares line through `(x, y)` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
}

pub fn linear_fit(points: &[(f64, f64)]) -> Result<LineFit> {
    if points.len() < 2 {
        return Err(SpectraError::Domain("a line needs at least two points".into()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(SpectraError::Domain("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    Ok(LineFit { slope, intercept: my - slope * mx })
}

/// Slope of `ln |y|` against `x`; zero values are skipped.
pub fn log_linear_slope(points: &[(f64, f64)]) -> Result<LineFit> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.1 != 0.0)
        .map(|p| (p.0, p.1.abs().ln()))
        .collect();
    linear_fit(&logs)
}
