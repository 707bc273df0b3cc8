//! Eigenvalues `λ = μ^{2α}` as the positive roots of `F(μ)`.
//!
//! Roots are bracketed on a grid of step π/8, narrowed by bisection and
//! finished with a safeguarded secant iteration. For large α the
//! determinant at small μ is many orders of magnitude below the size of
//! the individual terms, so each grid value is checked against a
//! re-evaluation with 64 more bits and the precision is raised until the
//! two agree.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use rug::ops::Pow;
use rug::Float;
use serde::Serialize;

use crate::asymptotics::predict_first_index;
use crate::error::{Result, SpectraError};
use crate::exact_forms::{eq2_residual, odd_equation_residual3};
use crate::numeric::{check_precision, pi};
use crate::spectral_matrix::{CharacteristicDeterminant, OperatorOrder, Parity};

/// Lower end of every automatic scan; μ = 0 is degenerate.
pub const SCAN_START: f64 = 0.1;

const BISECTION_WIDTH: f64 = 1e-3;
const SECANT_BUDGET: usize = 200;
const PROBE_BITS: u32 = 64;
const MAX_EVAL_BITS: u32 = 8192;
const SCAN_LIMIT: f64 = 1e6;

/// Grid spacing `π/8` of the bracketing scan.
pub fn grid_step() -> f64 {
    std::f64::consts::PI / 8.0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    GeneralDet,
    ClosedFormAlpha2,
    ClosedFormAlpha3Even,
    TranscendentalAlpha3Odd,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::GeneralDet => "general_det",
            Method::ClosedFormAlpha2 => "closed_form_alpha2",
            Method::ClosedFormAlpha3Even => "closed_form_alpha3_even",
            Method::TranscendentalAlpha3Odd => "transcendental_alpha3_odd",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self> {
        [
            Method::GeneralDet,
            Method::ClosedFormAlpha2,
            Method::ClosedFormAlpha3Even,
            Method::TranscendentalAlpha3Odd,
        ]
        .into_iter()
        .find(|m| m.as_str() == s)
        .ok_or_else(|| SpectraError::Domain(format!("unknown method `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueRecord {
    pub alpha: u32,
    pub n: i64,
    pub mu: Float,
    /// `μ^{2α}`.
    pub lambda: Float,
    /// `μ − nπ` (odd α) or `μ − (π/2 + nπ)` (even α).
    pub delta: Float,
    /// `|F(μ)|` at the reported μ.
    pub residual: Float,
    pub precision_bits: u32,
    pub method: Method,
}

/// Something the scan noticed and will not hide.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Anomaly {
    /// Two roots rounded to the same index.
    IndexCollision { n: i64, mu: f64 },
    /// No root was found for index `missing` between two found roots.
    IndexGap { missing: i64, after_mu: f64 },
    /// `|F|` dips sharply without changing sign: a double root or a pair
    /// of roots inside one grid cell.
    SuspectedDoubleRoot { lo: f64, hi: f64 },
}

impl fmt::Display for Anomaly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Anomaly::IndexCollision { n, mu } => {
                write!(f, "index collision: root at mu = {mu} also rounds to n = {n}")
            }
            Anomaly::IndexGap { missing, after_mu } => {
                write!(f, "index gap: no root for n = {missing} after mu = {after_mu}")
            }
            Anomaly::SuspectedDoubleRoot { lo, hi } => {
                write!(f, "suspected double root or missed pair in [{lo}, {hi}]")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootSearch {
    pub roots: Vec<Float>,
    pub anomalies: Vec<Anomaly>,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub records: Vec<EigenvalueRecord>,
    pub anomalies: Vec<Anomaly>,
}

impl Spectrum {
    /// Smallest assigned index.
    pub fn n0(&self) -> Option<i64> {
        self.records.first().map(|r| r.n)
    }
}

/// Relative refinement tolerance `2^{−(bits−10)}`.
pub fn refinement_tolerance(bits: u32) -> f64 {
    2f64.powi(-(bits as i32 - 10))
}

/// `F` at one point together with the working precision that makes its
/// value (and its neighbourhood) trustworthy.
#[derive(Clone)]
struct Sample {
    mu: f64,
    value: Float,
    refine_bits: u32,
}

fn sample(det: &CharacteristicDeterminant, mu: f64, bits: u32) -> Result<Sample> {
    let mut p = bits;
    loop {
        let lo = det.eval_at(&Float::with_val(p, mu), p)?;
        let hi = det.eval_at(&Float::with_val(p + PROBE_BITS, mu), p + PROBE_BITS)?;
        let noise = Float::with_val(p + PROBE_BITS, &hi - &lo).abs();
        let floor = bits + 16;
        if noise.is_zero() {
            return Ok(Sample { mu, value: hi, refine_bits: floor.max(p) });
        }
        let scale = Float::with_val(p + PROBE_BITS, hi.abs_ref());
        let trusted = !scale.is_zero() && noise < Float::with_val(p, &scale >> 20u32);
        if trusted {
            // relative noise 2^{r} at p shrinks by one bit per extra bit
            let r = (noise.to_f64().log2() - scale.to_f64().log2()).ceil();
            let needed = (f64::from(p) + r + f64::from(bits) + 8.0).max(f64::from(floor));
            return Ok(Sample { mu, value: hi, refine_bits: needed as u32 });
        }
        if p >= MAX_EVAL_BITS {
            return Err(SpectraError::Numerical {
                message: format!(
                    "cannot resolve the sign of det A_{}(mu) at mu = {mu} within {MAX_EVAL_BITS} bits",
                    det.order().alpha()
                ),
                bracket: Some((mu, mu)),
            });
        }
        p *= 2;
    }
}

fn sign(x: &Float) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_sign_negative() {
        -1
    } else {
        1
    }
}

/// Bisection down to `BISECTION_WIDTH`, then secant steps kept inside the
/// bracket, stopping when the step drops below `2^{−(bits−10)}·μ`.
fn refine<F>(f: F, a: f64, b: f64, bits: u32, eval_bits: u32) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let w = eval_bits;
    let mut a = Float::with_val(w, a);
    let mut b = Float::with_val(w, b);
    let mut fa = f(&a)?;
    let mut fb = f(&b)?;
    if fa.is_zero() {
        return Ok(a);
    }
    if fb.is_zero() {
        return Ok(b);
    }
    if sign(&fa) == sign(&fb) {
        return Err(SpectraError::Numerical {
            message: "sign change lost under refinement (suspected double root)".into(),
            bracket: Some((a.to_f64(), b.to_f64())),
        });
    }

    while Float::with_val(w, &b - &a) > BISECTION_WIDTH {
        let m = Float::with_val(w, &a + &b) / 2u32;
        let fm = f(&m)?;
        if fm.is_zero() {
            return Ok(m);
        }
        if sign(&fm) == sign(&fa) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
    }

    let rel = refinement_tolerance(bits);
    let (mut x0, mut f0) = (a.clone(), fa.clone());
    let (mut x1, mut f1) = (b.clone(), fb.clone());
    for _ in 0..SECANT_BUDGET {
        let slope_den = Float::with_val(w, &f1 - &f0);
        let mut x = if slope_den.is_zero() {
            Float::with_val(w, &a + &b) / 2u32
        } else {
            let step = Float::with_val(w, &x1 - &x0) * &f1 / slope_den;
            Float::with_val(w, &x1 - &step)
        };
        if !(x > a && x < b) {
            x = Float::with_val(w, &a + &b) / 2u32;
        }
        let fx = f(&x)?;
        if fx.is_zero() {
            return Ok(x);
        }
        if sign(&fx) == sign(&fa) {
            a = x.clone();
            fa = fx.clone();
        } else {
            b = x.clone();
        }
        let tol = Float::with_val(w, &x * rel);
        let moved = Float::with_val(w, &x - &x1).abs();
        let width = Float::with_val(w, &b - &a);
        x0 = std::mem::replace(&mut x1, x);
        f0 = std::mem::replace(&mut f1, fx);
        if moved < tol || width < tol {
            return Ok(x1);
        }
    }
    Err(SpectraError::Numerical {
        message: format!("secant refinement did not converge in {SECANT_BUDGET} steps"),
        bracket: Some((a.to_f64(), b.to_f64())),
    })
}

fn validate_range(mu_lo: f64, mu_hi: f64) -> Result<()> {
    if !(mu_lo.is_finite() && mu_hi.is_finite()) || mu_lo <= 0.0 || mu_lo >= mu_hi {
        return Err(SpectraError::Domain(format!(
            "need 0 < mu_lo < mu_hi, got [{mu_lo}, {mu_hi}]"
        )));
    }
    Ok(())
}

fn grid(mu_lo: f64, mu_hi: f64) -> Vec<f64> {
    let step = grid_step();
    let cells = ((mu_hi - mu_lo) / step).ceil() as usize;
    let mut xs: Vec<f64> = (0..cells).map(|i| mu_lo + i as f64 * step).collect();
    xs.push(mu_hi);
    xs
}

fn search(det: &CharacteristicDeterminant, mu_lo: f64, mu_hi: f64, bits: u32) -> Result<RootSearch> {
    let samples: Vec<Sample> = grid(mu_lo, mu_hi)
        .into_par_iter()
        .map(|x| sample(det, x, bits))
        .collect::<Result<_>>()?;

    let mut exact = Vec::new();
    let mut brackets = Vec::new();
    for (i, s) in samples.iter().enumerate() {
        if s.value.is_zero() {
            exact.push(Float::with_val(bits, s.mu));
            continue;
        }
        if let Some(next) = samples.get(i + 1) {
            if !next.value.is_zero() && sign(&s.value) != sign(&next.value) {
                brackets.push((s.clone(), next.clone()));
            }
        }
    }

    let mut anomalies = Vec::new();
    for w in samples.windows(3) {
        let (l, m, r) = (&w[0].value, &w[1].value, &w[2].value);
        let same = sign(l) == sign(m) && sign(m) == sign(r) && sign(m) != 0;
        let edge = Float::with_val(bits, l.abs_ref()).min(&Float::with_val(bits, r.abs_ref()));
        if same && Float::with_val(bits, m.abs_ref()) < Float::with_val(bits, &edge * 1e-3) {
            anomalies.push(Anomaly::SuspectedDoubleRoot { lo: w[0].mu, hi: w[2].mu });
        }
    }

    let refined: Vec<Float> = brackets
        .into_par_iter()
        .map(|(l, r)| {
            let eval_bits = l.refine_bits.max(r.refine_bits);
            let root = refine(|x| det.eval_at(x, eval_bits), l.mu, r.mu, bits, eval_bits)?;
            Ok(Float::with_val(bits, &root))
        })
        .collect::<Result<_>>()?;

    let mut roots: Vec<Float> = exact.into_iter().chain(refined).collect();
    roots.sort_by(|x, y| x.partial_cmp(y).expect("finite roots"));
    Ok(RootSearch { roots, anomalies })
}

/// All roots of `F` in `[mu_lo, mu_hi]`, with scan diagnostics.
pub fn find_roots_detailed(
    order: OperatorOrder,
    mu_lo: f64,
    mu_hi: f64,
    precision_bits: u32,
) -> Result<RootSearch> {
    check_precision(precision_bits)?;
    validate_range(mu_lo, mu_hi)?;
    let det = CharacteristicDeterminant::new(order, precision_bits)?;
    search(&det, mu_lo, mu_hi, precision_bits)
}

/// Sorted roots of `F` in `[mu_lo, mu_hi]`.
pub fn find_roots(order: OperatorOrder, mu_lo: f64, mu_hi: f64, precision_bits: u32) -> Result<Vec<Float>> {
    Ok(find_roots_detailed(order, mu_lo, mu_hi, precision_bits)?.roots)
}

/// `n = round(μ/π)` for odd α, `round(μ/π − 1/2)` for even α.
pub fn index_of(order: OperatorOrder, mu: &Float) -> i64 {
    let t = Float::with_val(mu.prec().max(64), mu / pi(mu.prec().max(64)));
    let t = match order.parity() {
        Parity::Odd => t,
        Parity::Even => t - 0.5f64,
    };
    t.round().to_f64() as i64
}

/// `nπ` or `π/2 + nπ`.
pub fn index_base(order: OperatorOrder, n: i64, bits: u32) -> Float {
    let p = pi(bits);
    let base = Float::with_val(bits, &p * n);
    match order.parity() {
        Parity::Odd => base,
        Parity::Even => base + Float::with_val(bits, &p / 2u32),
    }
}

fn residual(det: &CharacteristicDeterminant, mu: &Float, bits: u32) -> Result<Float> {
    let v = det.eval_at(mu, bits + PROBE_BITS)?;
    Ok(Float::with_val(bits, v.abs()))
}

fn make_record(
    order: OperatorOrder,
    det: &CharacteristicDeterminant,
    n: i64,
    mu: Float,
    method: Method,
    bits: u32,
) -> Result<EigenvalueRecord> {
    let lambda = Float::with_val(bits, (&mu).pow(2 * order.alpha()));
    let delta = if method == Method::ClosedFormAlpha3Even {
        Float::new(bits)
    } else {
        Float::with_val(bits, &mu - index_base(order, n, bits))
    };
    let residual = residual(det, &mu, bits)?;
    Ok(EigenvalueRecord {
        alpha: order.alpha(),
        n,
        mu,
        lambda,
        delta,
        residual,
        precision_bits: bits,
        method,
    })
}

fn index_roots(
    order: OperatorOrder,
    det: &CharacteristicDeterminant,
    roots: &[Float],
    bits: u32,
) -> Result<Spectrum> {
    let mut records = Vec::with_capacity(roots.len());
    let mut anomalies = Vec::new();
    for mu in roots {
        let n = index_of(order, mu);
        if let Some(prev) = records.last() {
            let prev: &EigenvalueRecord = prev;
            if n == prev.n {
                anomalies.push(Anomaly::IndexCollision { n, mu: mu.to_f64() });
            }
            for missing in (prev.n + 1)..n {
                anomalies.push(Anomaly::IndexGap { missing, after_mu: prev.mu.to_f64() });
            }
        }
        records.push(make_record(order, det, n, Float::with_val(bits, mu), Method::GeneralDet, bits)?);
    }
    Ok(Spectrum { records, anomalies })
}

/// Indexes sorted roots and reports collisions and gaps.
pub fn assign_indices(order: OperatorOrder, roots: &[Float], precision_bits: u32) -> Result<Spectrum> {
    check_precision(precision_bits)?;
    if roots.windows(2).any(|w| w[0] >= w[1]) {
        return Err(SpectraError::Domain("roots must be strictly increasing".into()));
    }
    let det = CharacteristicDeterminant::new(order, precision_bits)?;
    index_roots(order, &det, roots, precision_bits)
}

/// Re-solves a general root on a closed-form objective and checks agreement.
fn closed_form_root<F>(objective: F, general: &Float, bits: u32, what: &str) -> Result<Float>
where
    F: Fn(&Float) -> Result<Float>,
{
    let g = general.to_f64();
    let tol = refinement_tolerance(bits) * g;
    let w = (1e3 * tol).max(1e-9 * g);
    let root = refine(objective, g - w, g + w, bits, bits + 32)?;
    let root = Float::with_val(bits, &root);
    let gap = Float::with_val(bits, &root - general).abs().to_f64();
    if gap > 64.0 * tol {
        return Err(SpectraError::InternalConsistency(format!(
            "{what} root {} disagrees with the determinant root {g} by {gap:e}",
            root.to_f64()
        )));
    }
    Ok(root)
}

fn cross_validate(order: OperatorOrder, det: &CharacteristicDeterminant, rec: EigenvalueRecord) -> Result<EigenvalueRecord> {
    let bits = rec.precision_bits;
    match order.alpha() {
        2 => {
            let mu = closed_form_root(|x| Ok(eq2_residual(x)), &rec.mu, bits, "cos mu cosh mu = 1")?;
            make_record(order, det, rec.n, mu, Method::ClosedFormAlpha2, bits)
        }
        3 if rec.n % 2 == 0 => {
            let exact = index_base(order, rec.n, bits);
            let gap = Float::with_val(bits, &rec.mu - &exact).abs().to_f64();
            let tol = refinement_tolerance(bits) * exact.to_f64();
            if gap > 64.0 * tol {
                return Err(SpectraError::InternalConsistency(format!(
                    "even alpha = 3 root {} is {gap:e} away from {} pi",
                    rec.mu.to_f64(),
                    rec.n
                )));
            }
            make_record(order, det, rec.n, exact, Method::ClosedFormAlpha3Even, bits)
        }
        3 => {
            let mu = closed_form_root(|x| Ok(odd_equation_residual3(x)), &rec.mu, bits, "odd alpha = 3 equation")?;
            make_record(order, det, rec.n, mu, Method::TranscendentalAlpha3Odd, bits)
        }
        _ => Ok(rec),
    }
}

fn spectrum_from(order: OperatorOrder, count: usize, bits: u32, start: f64) -> Result<Spectrum> {
    check_precision(bits)?;
    if count < 1 {
        return Err(SpectraError::Domain("count must be at least 1".into()));
    }
    let det = CharacteristicDeterminant::new(order, bits)?;
    let pi = std::f64::consts::PI;
    let first_guess = 4.0 * f64::from(order.alpha()) / std::f64::consts::E;
    let mut lo = start;
    let mut hi = start.max(first_guess) + (count as f64 + 1.0) * pi;
    let mut roots: Vec<Float> = Vec::new();
    let mut anomalies = Vec::new();
    loop {
        let found = search(&det, lo, hi, bits)?;
        anomalies.extend(found.anomalies);
        for r in found.roots {
            let fresh = roots.last().is_none_or(|last| {
                let tol = refinement_tolerance(bits) * r.to_f64();
                Float::with_val(bits, &r - last).to_f64() > 64.0 * tol
            });
            if fresh {
                roots.push(r);
            }
        }
        if roots.len() >= count {
            break;
        }
        if hi > SCAN_LIMIT {
            return Err(SpectraError::Numerical {
                message: format!("only {} roots found below mu = {SCAN_LIMIT}", roots.len()),
                bracket: Some((start, hi)),
            });
        }
        lo = hi;
        hi += (count - roots.len() + 2) as f64 * pi;
    }
    roots.truncate(count);

    let indexed = index_roots(order, &det, &roots, bits)?;
    anomalies.extend(indexed.anomalies);
    let records = indexed
        .records
        .into_iter()
        .map(|r| cross_validate(order, &det, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum { records, anomalies })
}

/// The first `count` eigenvalues, scanning upward from μ = 0.1.
pub fn spectrum(order: OperatorOrder, count: usize, precision_bits: u32) -> Result<Spectrum> {
    spectrum_from(order, count, precision_bits, SCAN_START)
}

/// Where the search for the lowest eigenvalue starts: half the asymptotic
/// estimate `μ_min ≈ 4α/e`.
pub fn min_scan_start(order: OperatorOrder) -> f64 {
    SCAN_START.max(0.5 * std::f64::consts::PI * predict_first_index(order.alpha()))
}

pub fn min_eigenvalue(order: OperatorOrder, precision_bits: u32) -> Result<EigenvalueRecord> {
    let s = spectrum_from(order, 1, precision_bits, min_scan_start(order))?;
    Ok(s.records.into_iter().next().expect("one record requested"))
}
