//! Named verification suites with pass/fail lines and measured numbers.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::Serialize;

use crate::analysis::{fit_laplace_ratio, log_linear_slope};
use crate::asymptotics::{predict_delta3, predict_lambda_min, predict_mu};
use crate::eigensolver::{min_eigenvalue, spectrum, EigenvalueRecord, Method};
use crate::error::{Result, SpectraError};
use crate::exact_forms::{det2_mu, det3_general, det3_matrix, det3_mu, leibniz_determinant, Det3Parameters};
use crate::numeric::{pi, rel_diff, Complex, EXTENDED_PRECISION};
use crate::spectral_matrix::{build_matrix, laplace_constants, scaled_determinant, OperatorOrder};

/// `μ_{n,3}` for odd `n`, to ten decimals.
pub const ALPHA3_TABLE: [(i64, f64); 5] = [
    (3, 9.4270555708),
    (5, 15.7079533785),
    (7, 21.9911486179),
    (9, 28.2743338821),
    (11, 34.5575191894),
];

/// Published `μ_min` and `λ_min` for α = 2.
pub const ALPHA2_MU_MIN: f64 = 4.7300;
pub const ALPHA2_LAMBDA_MIN: f64 = 500.5467;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Table,
    ClosedForm,
    Asymptotics,
    LambdaMin,
}

impl Suite {
    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Table => "table",
            Suite::ClosedForm => "closed-form",
            Suite::Asymptotics => "asymptotics",
            Suite::LambdaMin => "lambda-min",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Table, Suite::ClosedForm, Suite::Asymptotics, Suite::LambdaMin]
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| SpectraError::Configuration(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub measured: String,
    pub target: String,
    pub pass: bool,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {} (target {})", self.name, self.measured, self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub lines: Vec<CheckLine>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report { suite, lines: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, measured: impl Into<String>, target: impl Into<String>, pass: bool) {
        self.lines.push(CheckLine {
            name: name.into(),
            measured: measured.into(),
            target: target.into(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} ({} checks)", self.suite, self.lines.len())
    }
}

fn o(alpha: u32) -> Result<OperatorOrder> {
    OperatorOrder::new(alpha)
}

fn record(records: &[EigenvalueRecord], n: i64) -> Result<&EigenvalueRecord> {
    records
        .iter()
        .find(|r| r.n == n)
        .ok_or_else(|| SpectraError::InternalConsistency(format!("index {n} missing from the spectrum")))
}

/// α = 3: odd roots against the published table, even roots exactly `nπ`,
/// and the offsets against the leading-order law.
pub fn table_suite() -> Result<Report> {
    let bits = EXTENDED_PRECISION;
    let mut report = Report::new(Suite::Table);
    let spec = spectrum(o(3)?, 19, bits)?;
    for (n, want) in ALPHA3_TABLE {
        let err = (record(&spec.records, n)?.mu.to_f64() - want).abs();
        report.push(format!("mu_{n},3"), format!("|mu - {want}| = {err:.2e}"), "< 1e-9", err < 1e-9);
    }
    let p = pi(bits);
    for n in (2..=20).step_by(2) {
        let r = record(&spec.records, n)?;
        let err = Float::with_val(bits, &r.mu - Float::with_val(bits, &p * n)).abs().to_f64();
        let exact = r.method == Method::ClosedFormAlpha3Even && r.delta.is_zero();
        report.push(
            format!("mu_{n},3 = {n} pi"),
            format!("|mu - n pi| = {err:.2e}, delta exactly zero: {exact}"),
            "< 1e-12 and exact",
            err < 1e-12 && exact,
        );
    }
    for n in [3u64, 5, 7] {
        let r = record(&spec.records, n as i64)?;
        let ratio = Float::with_val(bits, &r.delta / predict_delta3(n, bits)?).to_f64();
        report.push(
            format!("delta_{n} law"),
            format!("measured/predicted = {ratio:.6}"),
            "in [0.99, 1.01]",
            (0.99..=1.01).contains(&ratio),
        );
    }
    Ok(report)
}

/// Parameters drawn from a seeded generator: `a`, `b` with `|ln|·|| ≤ 3` and
/// arbitrary argument, `ω` on the unit circle.
pub fn random_det3_parameters(seed: u64, count: usize, bits: u32) -> Vec<Det3Parameters> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    (0..count)
        .map(|_| {
            let polar = |r: f64, t: f64| {
                Complex::from_polar(&Float::with_val(bits, r), &Float::with_val(bits, t))
            };
            let a = polar(rng.gen_range(-3.0f64..3.0).exp(), rng.gen_range(0.0..tau));
            let b = polar(rng.gen_range(-3.0f64..3.0).exp(), rng.gen_range(0.0..tau));
            let omega = polar(1.0, rng.gen_range(0.0..tau));
            Det3Parameters { a, b, omega }
        })
        .collect()
}

/// Largest relative error between the brute-force determinant and the closed form.
pub fn det3_oracle_error(params: &[Det3Parameters]) -> Result<f64> {
    let mut worst = 0f64;
    for p in params {
        let brute = leibniz_determinant(&det3_matrix(p)?);
        worst = worst.max(rel_diff(&brute, &det3_general(p)?));
    }
    Ok(worst)
}

/// Largest relative error of `det A_2` against `−8i(1 − cos μ cosh μ)` on `μ = lo, lo + step, …, hi`.
pub fn det2_oracle_error(lo: f64, hi: f64, step: f64, bits: u32) -> Result<f64> {
    let order = o(2)?;
    let minus_i = Complex::from_f64(bits, 0.0, -1.0);
    let mut worst = 0f64;
    let n = ((hi - lo) / step).round() as usize;
    for i in 0..=n {
        let mu = Float::with_val(bits, lo + i as f64 * step);
        let general = scaled_determinant(&build_matrix(order, &mu, bits)?);
        let closed = det2_mu(&mu).mul_complex(&minus_i);
        worst = worst.max(general.rel_diff(&closed));
    }
    Ok(worst)
}

/// Largest relative error of the general α = 3 determinant against the closed form.
pub fn det3_mu_error(lo: f64, hi: f64, step: f64, bits: u32) -> Result<f64> {
    let order = o(3)?;
    let mut worst = 0f64;
    let n = ((hi - lo) / step).round() as usize;
    for i in 0..=n {
        let mu = Float::with_val(bits, lo + i as f64 * step);
        let general = scaled_determinant(&build_matrix(order, &mu, bits)?);
        worst = worst.max(general.rel_diff(&det3_mu(&mu)));
    }
    Ok(worst)
}

/// Determinant identities for α = 2, 3 and the α = 2 eigenvalue facts.
pub fn closed_form_suite(samples: usize, seed: u64) -> Result<Report> {
    let bits = 128;
    let mut report = Report::new(Suite::ClosedForm);

    let err = det3_oracle_error(&random_det3_parameters(seed, samples, bits))?;
    report.push(
        format!("det A_3 closed form vs 6x6 permutation sum ({samples} samples, seed {seed})"),
        format!("max rel err {err:.2e}"),
        "< 1e-10",
        err < 1e-10,
    );
    let err = det3_mu_error(0.1, 40.0, 0.1, bits)?;
    report.push("det A_3(mu) vs general determinant on [0.1, 40]", format!("max rel err {err:.2e}"), "< 1e-10", err < 1e-10);
    let err = det2_oracle_error(0.1, 20.0, 0.01, bits)?;
    report.push("det A_2(mu) vs -8i(1 - cos mu cosh mu) on [0.1, 20]", format!("max rel err {err:.2e}"), "< 1e-10", err < 1e-10);

    let min = min_eigenvalue(o(2)?, EXTENDED_PRECISION)?;
    let mu = min.mu.to_f64();
    let lambda = min.lambda.to_f64();
    report.push("mu_min,2", format!("{mu:.10}"), format!("{ALPHA2_MU_MIN} +- 5e-5"), (mu - ALPHA2_MU_MIN).abs() < 5e-5);
    report.push(
        "lambda_min,2",
        format!("{lambda:.6}"),
        format!("{ALPHA2_LAMBDA_MIN} +- 1e-2"),
        (lambda - ALPHA2_LAMBDA_MIN).abs() < 1e-2,
    );
    let ratios = alpha2_offset_ratios(8)?;
    let last = ratios.last().map_or(f64::NAN, |r| r.1);
    report.push(
        "delta_n,2 / (2(-1)^(n+1) e^(-pi/2) e^(-n pi)) at n = 8",
        format!("{last:.6}"),
        "within 1% of 1",
        (last - 1.0).abs() < 0.01,
    );
    Ok(report)
}

/// `(n, δ_n / (2(−1)^{n+1}e^{−π/2}e^{−nπ}))` for α = 2, `n = 1..=n_max`.
pub fn alpha2_offset_ratios(n_max: i64) -> Result<Vec<(i64, f64)>> {
    let bits = EXTENDED_PRECISION;
    let spec = spectrum(o(2)?, n_max as usize, bits)?;
    let p = pi(bits);
    spec.records
        .iter()
        .filter(|r| r.n <= n_max)
        .map(|r| {
            let exponent = Float::with_val(bits, -(Float::with_val(bits, &p / 2u32) + Float::with_val(bits, &p * r.n)));
            let sign = if r.n % 2 == 1 { 2 } else { -2 };
            let law = exponent.exp() * sign;
            Ok((r.n, Float::with_val(bits, &r.delta / &law).to_f64()))
        })
        .collect()
}

/// Rate `−π sin(2π/α)` (odd α) or `−2π sin(π/α)` (even α) at which the
/// second-order prediction error is expected to decay in `n`.
pub fn expected_decay_slope(alpha: u32) -> f64 {
    let a = f64::from(alpha);
    match alpha % 2 {
        1 => -std::f64::consts::PI * (2.0 * std::f64::consts::PI / a).sin(),
        _ => -2.0 * std::f64::consts::PI * (std::f64::consts::PI / a).sin(),
    }
}

/// `(n, |μ_n − predicted μ_n|)` for `n` in `range`, at extended precision.
pub fn prediction_errors(alpha: u32, range: std::ops::RangeInclusive<i64>) -> Result<Vec<(f64, f64)>> {
    let bits = EXTENDED_PRECISION;
    let order = o(alpha)?;
    let spec = spectrum(order, *range.end() as usize + 1, bits)?;
    let mut out = Vec::new();
    for r in spec.records.iter().filter(|r| range.contains(&r.n)) {
        let pred = predict_mu(order, r.n as u64, bits)?.value();
        let err = Float::with_val(bits, &r.mu - pred).abs();
        if !err.is_zero() {
            out.push((r.n as f64, err.to_f64()));
        }
    }
    Ok(out)
}

/// Fit window of the two-term Laplace fit.
pub const RATIO_FIT_WINDOW: (f64, f64) = (15.0, 30.0);
const RATIO_FIT_SAMPLES: usize = 301;

/// Decay of the prediction error in `n ∈ [10, 20]` and, for α ∈ {4, 5},
/// the two-term Laplace fit.
pub fn asymptotics_suite(alpha: u32) -> Result<Report> {
    if alpha < 4 {
        return Err(SpectraError::Domain(format!(
            "the asymptotics suite covers alpha >= 4; alpha = {alpha} is settled by closed forms"
        )));
    }
    let bits = EXTENDED_PRECISION;
    let order = o(alpha)?;
    let mut report = Report::new(Suite::Asymptotics);

    let pts = prediction_errors(alpha, 10..=20)?;
    let slope = log_linear_slope(&pts)?.slope;
    let want = expected_decay_slope(alpha);
    let rel = ((slope - want) / want).abs();
    report.push(
        format!("alpha = {alpha}: slope of ln|mu_n - prediction| over n in [10, 20]"),
        format!("{slope:.4} vs {want:.4} ({:.1}% off)", rel * 100.0),
        "within 20%",
        rel <= 0.2,
    );

    let lc = laplace_constants(order, bits)?;
    let from_products = lc.ratio_from_products();
    let closed = ratio_closed_form(alpha, bits);
    if let Some(p) = &from_products {
        let d = Float::with_val(bits, p - &closed).abs().to_f64();
        report.push(
            format!("alpha = {alpha}: S, T products vs 2/sin^2(pi/(2 alpha))"),
            format!("|difference| = {d:.2e}"),
            "< 1e-60",
            d < 1e-60,
        );
    }
    if alpha == 4 || alpha == 5 {
        let (lo, hi) = RATIO_FIT_WINDOW;
        let fit = fit_laplace_ratio(order, lo, hi, RATIO_FIT_SAMPLES, bits)?;
        let rel = (Float::with_val(bits, &fit.ratio - &closed) / &closed).abs().to_f64();
        report.push(
            format!("alpha = {alpha}: two-term fit of det on [{lo}, {hi}] recovers -K2/K1"),
            format!("{:.6} vs {:.6} (rel {rel:.2e})", fit.ratio.to_f64(), closed.to_f64()),
            "rel < 1e-3",
            rel < 1e-3,
        );
    }
    Ok(report)
}

/// `2 / sin²(π/(2α))`.
pub fn ratio_closed_form(alpha: u32, bits: u32) -> Float {
    let s = crate::numeric::pi_fraction(bits, 1, 2 * i64::from(alpha)).sin();
    Float::with_val(bits, 2u32 / Float::with_val(bits, s.square_ref()))
}

/// `λ_min,α / (√(8πα)(4α/e)^{2α})` for `α = 1..=alpha_max`.
pub fn lambda_min_ratios(alpha_max: u32) -> Result<Vec<(u32, f64)>> {
    let bits = EXTENDED_PRECISION;
    (1..=alpha_max)
        .map(|alpha| {
            let min = min_eigenvalue(o(alpha)?, bits)?;
            let ratio = Float::with_val(bits, &min.lambda / predict_lambda_min(alpha, bits)?);
            Ok((alpha, ratio.to_f64()))
        })
        .collect()
}

pub fn lambda_min_suite(alpha_max: u32) -> Result<Report> {
    if alpha_max < 1 {
        return Err(SpectraError::Domain("alpha-max must be at least 1".into()));
    }
    let mut report = Report::new(Suite::LambdaMin);
    let ratios = lambda_min_ratios(alpha_max)?;
    for (alpha, r) in &ratios {
        report.push(format!("alpha = {alpha}: lambda_min ratio"), format!("{r:.5}"), "in (0.90, 1.00)", *r > 0.9 && *r < 1.0);
    }
    let increasing = ratios.windows(2).all(|w| w[1].1 > w[0].1);
    report.push("ratios strictly increasing", format!("{increasing}"), "true", increasing);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Table, Suite::ClosedForm, Suite::Asymptotics, Suite::LambdaMin] {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("tables".parse::<Suite>().is_err());
    }

    #[test]
    fn report_lines() {
        let mut r = Report::new(Suite::Table);
        r.push("x", "1", "< 2", true);
        assert!(r.passed());
        r.push("y", "3", "< 2", false);
        assert!(!r.passed());
        let text = r.to_string();
        assert!(text.contains("PASS x: 1 (target < 2)") && text.contains("FAIL y"));
        assert!(text.ends_with("FAIL table (2 checks)"));
    }

    #[test]
    fn slopes() {
        assert!((expected_decay_slope(5) + 2.9878).abs() < 1e-3);
        assert!((expected_decay_slope(4) + 4.4429).abs() < 1e-3);
    }

    #[test]
    fn seeded_parameters_are_reproducible() {
        let a = random_det3_parameters(7, 3, 64);
        let b = random_det3_parameters(7, 3, 64);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.a, y.a);
            assert_eq!(x.omega, y.omega);
        }
    }

    #[test]
    fn small_oracles() {
        assert!(det3_oracle_error(&random_det3_parameters(1, 20, 128)).unwrap() < 1e-25);
        assert!(det2_oracle_error(0.1, 20.0, 0.5, 128).unwrap() < 1e-25);
        assert!(det3_mu_error(0.1, 40.0, 1.0, 128).unwrap() < 1e-25);
    }

    #[test]
    fn rejects_low_alpha_asymptotics() {
        assert!(asymptotics_suite(3).is_err());
        assert!(lambda_min_suite(0).is_err());
    }
}
