//! Command-line front end: `spectrum`, `scan`, `verify`, `rationality`.
//!
//! Data goes to `--output` (written atomically) or standard output;
//! diagnostics always go to the error stream.

pub mod output;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::eigensolver::spectrum;
use crate::error::{Result, SpectraError};
use crate::number_theory::{has_arithmetic_progression, is_cos_rational, CertificateStatus, RationalityVerdict};
use crate::numeric::NATIVE_PRECISION;
use crate::scan::{determinant_scan, scan_minima};
use crate::spectral_matrix::OperatorOrder;
use crate::verification::{asymptotics_suite, closed_form_suite, lambda_min_suite, table_suite, Report, Suite};

pub const PRECISION_ENV: &str = "CANONICAL_SPECTRA_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

/// `lo:hi:step` in raw μ units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl FromStr for MuRange {
    type Err = SpectraError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, step] = parts[..] else {
            return Err(SpectraError::Configuration(format!("expected lo:hi:step, got `{s}`")));
        };
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| SpectraError::Configuration(format!("bad number `{x}` in mu range: {e}")))
        };
        let r = MuRange { lo: num(lo)?, hi: num(hi)?, step: num(step)? };
        if !(r.step > 0.0) {
            return Err(SpectraError::Configuration("step must be positive".into()));
        }
        if !(r.lo > 0.0 && r.hi >= r.lo) {
            return Err(SpectraError::Configuration(format!("need 0 < lo <= hi, got `{s}`")));
        }
        Ok(r)
    }
}

#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "canonical-spectra", version, about = "Eigenvalues of (-1)^a u^(2a) = lambda u with clamped ends on [0, 1]")]
pub struct RunConfig {
    /// Working precision in bits (at least 53).
    #[arg(long, global = true, env = PRECISION_ENV, default_value_t = NATIVE_PRECISION,
          value_parser = clap::value_parser!(u32).range(53..))]
    pub precision: u32,

    /// Output encoding; defaults to csv for data and text for verify reports.
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,

    /// Write here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// The first `count` eigenvalues.
    Spectrum {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        alpha: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
    },
    /// Smallest singular value and scaled log-determinant along the μ-axis.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        alpha: u32,
        /// lo:hi:step with step at most pi/8.
        #[arg(long)]
        mu: MuRange,
    },
    /// Run one verification suite.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        check: Suite,
        /// Order for the asymptotics suite.
        #[arg(long, default_value_t = 5)]
        alpha: u32,
        /// Largest order for the lambda-min suite.
        #[arg(long, default_value_t = 6)]
        alpha_max: u32,
        /// Random samples for the determinant oracle.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Certificate for the rationality of cos(pi/alpha).
    Rationality {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        alpha: u64,
    },
}

fn parse_suite(s: &str) -> std::result::Result<Suite, String> {
    s.parse().map_err(|e: SpectraError| e.to_string())
}

/// Output of one command: the data to write and whether every assertion held.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub data: String,
    pub ok: bool,
}

fn unsupported_format(cmd: &str, f: OutputFormat) -> SpectraError {
    SpectraError::Configuration(format!("{cmd} cannot write {f:?} output"))
}

pub fn cmd_spectrum(cfg: &RunConfig, alpha: u32, count: u64, diag: &mut dyn Write) -> Result<Outcome> {
    let order = OperatorOrder::new(alpha)?;
    let spec = spectrum(order, count as usize, cfg.precision)?;
    for a in &spec.anomalies {
        let _ = writeln!(diag, "warning: {a}");
    }
    let data = match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => output::records_to_csv(&spec.records)?,
        OutputFormat::Json => output::records_to_json(&spec.records)?,
        f => return Err(unsupported_format("spectrum", f)),
    };
    Ok(Outcome { data, ok: true })
}

pub fn cmd_scan(cfg: &RunConfig, alpha: u32, mu: MuRange, diag: &mut dyn Write) -> Result<Outcome> {
    let order = OperatorOrder::new(alpha)?;
    let rows = determinant_scan(order, mu.lo, mu.hi, mu.step, cfg.precision)?;
    let minima = scan_minima(order, &rows, cfg.precision)?;
    let shown: Vec<String> = minima.iter().map(|m| format!("{m:.6}")).collect();
    let _ = writeln!(diag, "minima of the smallest singular value: [{}]", shown.join(", "));
    let data = match cfg.format.unwrap_or(OutputFormat::Csv) {
        OutputFormat::Csv => output::scan_to_csv(&rows)?,
        OutputFormat::Json => output::scan_to_json(&rows)?,
        OutputFormat::Svg => output::scan_to_svg(&rows, &format!("alpha = {alpha}")),
    };
    Ok(Outcome { data, ok: true })
}

pub fn cmd_verify(cfg: &RunConfig, check: Suite, alpha: u32, alpha_max: u32, samples: usize, seed: u64) -> Result<Outcome> {
    let report: Report = match check {
        Suite::Table => table_suite()?,
        Suite::ClosedForm => closed_form_suite(samples, seed)?,
        Suite::Asymptotics => asymptotics_suite(alpha)?,
        Suite::LambdaMin => lambda_min_suite(alpha_max)?,
    };
    let data = match cfg.format {
        None | Some(OutputFormat::Csv) => format!("{report}\n"),
        Some(OutputFormat::Json) => serde_json::to_string_pretty(&report).map_err(|e| SpectraError::Io(e.to_string()))?,
        Some(f) => return Err(unsupported_format("verify", f)),
    };
    Ok(Outcome { data, ok: report.passed() })
}

#[derive(Serialize)]
struct RationalityOutput<'a> {
    certificate: &'a RationalityVerdict,
    has_arithmetic_progression: bool,
}

pub fn cmd_rationality(cfg: &RunConfig, alpha: u64, diag: &mut dyn Write) -> Result<Outcome> {
    if let Some(f) = cfg.format.filter(|f| *f != OutputFormat::Json) {
        return Err(unsupported_format("rationality", f));
    }
    let verdict = is_cos_rational(alpha)?;
    if let Some(note) = &verdict.note {
        let _ = writeln!(diag, "note: {note}");
    }
    let out = RationalityOutput {
        certificate: &verdict,
        has_arithmetic_progression: has_arithmetic_progression(alpha)?,
    };
    let data = serde_json::to_string_pretty(&out).map_err(|e| SpectraError::Io(e.to_string()))? + "\n";
    Ok(Outcome { data, ok: verdict.status != CertificateStatus::Failed })
}

pub fn execute(cfg: &RunConfig, diag: &mut dyn Write) -> Result<Outcome> {
    match &cfg.command {
        Command::Spectrum { alpha, count } => cmd_spectrum(cfg, *alpha, *count, diag),
        Command::Scan { alpha, mu } => cmd_scan(cfg, *alpha, *mu, diag),
        Command::Verify { check, alpha, alpha_max, samples, seed } => {
            cmd_verify(cfg, *check, *alpha, *alpha_max, *samples, *seed)
        }
        Command::Rationality { alpha } => cmd_rationality(cfg, *alpha, diag),
    }
}

/// Parses `args`, runs the command and returns the process exit status:
/// 0 when every assertion passed, 1 when a check failed, 2 on errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, diag: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(diag, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let outcome = match execute(&cfg, diag) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(diag, "error: {e}");
            return 2;
        }
    };
    let written = match &cfg.output {
        Some(path) => output::write_atomic(path, &outcome.data),
        None => out.write_all(outcome.data.as_bytes()).map_err(|e| SpectraError::Io(e.to_string())),
    };
    if let Err(e) = written {
        let _ = writeln!(diag, "error: {e}");
        return 2;
    }
    if outcome.ok {
        0
    } else {
        let _ = writeln!(diag, "one or more checks failed");
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("canonical-spectra").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn mu_range_parsing() {
        let r: MuRange = "5:40:0.1".parse().unwrap();
        assert_eq!((r.lo, r.hi, r.step), (5.0, 40.0, 0.1));
        assert!("5:40".parse::<MuRange>().is_err());
        assert!("5:40:0".parse::<MuRange>().is_err());
        assert!("5:4:0.1".parse::<MuRange>().is_err());
        assert!("a:4:0.1".parse::<MuRange>().is_err());
    }

    #[test]
    fn spectrum_alpha1() {
        let (code, out, _) = run_capture(&["spectrum", "--alpha", "1", "--count", "3"]);
        assert_eq!(code, 0);
        let recs = output::records_from_csv(out.as_bytes()).unwrap();
        for (k, r) in recs.iter().enumerate() {
            assert!((r.mu.to_f64() - (k + 1) as f64 * std::f64::consts::PI).abs() < 1e-12);
        }
    }

    #[test]
    fn precision_floor_and_bad_args() {
        assert_eq!(run_capture(&["--precision", "32", "spectrum", "--alpha", "1", "--count", "1"]).0, 2);
        assert_eq!(run_capture(&["spectrum", "--alpha", "0", "--count", "1"]).0, 2);
        assert_eq!(run_capture(&["scan", "--alpha", "3", "--mu", "1:2:0.5"]).0, 2);
        assert_eq!(run_capture(&["--format", "svg", "spectrum", "--alpha", "1", "--count", "1"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn scan_single_row_and_diagnostics_stay_off_the_data_stream() {
        let (code, out, err) = run_capture(&["scan", "--alpha", "2", "--mu", "3:3:0.1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        assert!(err.contains("minima"));
        assert!(!out.contains("minima"));
    }

    #[test]
    fn rationality_examples() {
        let (code, out, _) = run_capture(&["rationality", "--alpha", "3"]);
        assert_eq!(code, 0);
        let j: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(j["certificate"]["value"], "1/2");
        assert_eq!(j["has_arithmetic_progression"], true);

        let (_, out, _) = run_capture(&["rationality", "--alpha", "9"]);
        let j: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(j["certificate"]["witness_polynomial"].as_array().unwrap().len(), 65);

        let (_, out, _) = run_capture(&["rationality", "--alpha", "4"]);
        let j: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(j["certificate"]["witness_polynomial"], serde_json::json!(["-1", "0", "2"]));
        assert_eq!(j["has_arithmetic_progression"], false);
    }

    #[test]
    fn verify_exit_status_follows_the_report() {
        let (code, out, _) = run_capture(&["verify", "--check", "lambda-min", "--alpha-max", "3"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("PASS lambda-min"));
        assert_eq!(run_capture(&["verify", "--check", "nonsense"]).0, 2);
    }
}
