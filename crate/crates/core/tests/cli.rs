//! The command-line front end end to end.

use canonical_spectra::cli::output::{records_from_csv, records_from_json, scan_from_csv};
use canonical_spectra::cli::run;
use canonical_spectra::eigensolver::spectrum;
use canonical_spectra::spectral_matrix::OperatorOrder;

fn cli(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("canonical-spectra").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn spectrum_csv_file_round_trips_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a3.csv");
    let p = path.to_str().unwrap();
    let (code, out, _) = cli(&["--precision", "192", "-o", p, "spectrum", "--alpha", "3", "--count", "6"]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    let back = records_from_csv(std::fs::File::open(&path).unwrap()).unwrap();
    let direct = spectrum(OperatorOrder::new(3).unwrap(), 6, 192).unwrap();
    assert_eq!(back, direct.records);
}

#[test]
fn spectrum_json_round_trips_exactly() {
    let (code, out, _) = cli(&["--precision", "128", "--format", "json", "spectrum", "--alpha", "2", "--count", "4"]);
    assert_eq!(code, 0);
    let back = records_from_json(&out).unwrap();
    let direct = spectrum(OperatorOrder::new(2).unwrap(), 4, 128).unwrap();
    assert_eq!(back, direct.records);
}

#[test]
fn scan_csv_reads_back() {
    let (code, out, diag) = cli(&["scan", "--alpha", "3", "--mu", "5:12:0.1"]);
    assert_eq!(code, 0);
    let rows = scan_from_csv(out.as_bytes()).unwrap();
    assert_eq!(rows.len(), 71);
    assert!(diag.contains("minima"));
}

#[test]
fn scan_svg_matches_golden_file() {
    let (code, out, _) = cli(&["--format", "svg", "scan", "--alpha", "1", "--mu", "1:10:0.25"]);
    assert_eq!(code, 0);
    let golden = include_str!("golden/scan_alpha1.svg");
    assert_eq!(out, golden);
}

#[test]
fn rationality_json_carries_the_certificate() {
    let (code, out, _) = cli(&["rationality", "--alpha", "9"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["certificate"]["is_rational"], false);
    assert_eq!(v["has_arithmetic_progression"], false);
    let (_, out, _) = cli(&["rationality", "--alpha", "3"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["has_arithmetic_progression"], true);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&["verify", "--check", "lambda-min", "--alpha-max", "3"]).0, 0);
    assert_eq!(cli(&["--precision", "52", "spectrum", "--alpha", "2", "--count", "1"]).0, 2);
    assert_eq!(cli(&["scan", "--alpha", "2", "--mu", "1:5:0.5"]).0, 2);
    assert_eq!(cli(&["spectrum", "--alpha", "0", "--count", "1"]).0, 2);
    assert_eq!(cli(&["--format", "svg", "spectrum", "--alpha", "2", "--count", "1"]).0, 2);
}

#[test]
fn failed_write_leaves_no_partial_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("out.csv");
    let (code, _, diag) = cli(&["-o", path.to_str().unwrap(), "spectrum", "--alpha", "1", "--count", "2"]);
    assert_eq!(code, 2);
    assert!(diag.contains("error"));
    assert!(!path.exists());
}
