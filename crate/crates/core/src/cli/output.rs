//! CSV, JSON and SVG encodings of solver output, and atomic file writes.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::eigensolver::{EigenvalueRecord, Method};
use crate::error::{Result, SpectraError};
use crate::numeric::{format_float, parse_float};
use crate::scan::ScanRow;

/// One eigenvalue as written to disk. Reals are decimal strings that parse
/// back bit-exactly at `precision_bits`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordRow {
    pub alpha: u32,
    pub n: i64,
    pub mu: String,
    pub lambda: String,
    pub delta: String,
    pub residual: String,
    pub method: String,
    pub precision_bits: u32,
}

impl From<&EigenvalueRecord> for RecordRow {
    fn from(r: &EigenvalueRecord) -> Self {
        RecordRow {
            alpha: r.alpha,
            n: r.n,
            mu: format_float(&r.mu),
            lambda: format_float(&r.lambda),
            delta: format_float(&r.delta),
            residual: format_float(&r.residual),
            method: r.method.to_string(),
            precision_bits: r.precision_bits,
        }
    }
}

impl RecordRow {
    pub fn to_record(&self) -> Result<EigenvalueRecord> {
        let bits = self.precision_bits;
        Ok(EigenvalueRecord {
            alpha: self.alpha,
            n: self.n,
            mu: parse_float(&self.mu, bits)?,
            lambda: parse_float(&self.lambda, bits)?,
            delta: parse_float(&self.delta, bits)?,
            residual: parse_float(&self.residual, bits)?,
            precision_bits: bits,
            method: self.method.parse::<Method>()?,
        })
    }
}

fn csv_err(e: csv::Error) -> SpectraError {
    SpectraError::Io(e.to_string())
}

fn json_err(e: serde_json::Error) -> SpectraError {
    SpectraError::Io(e.to_string())
}

pub fn records_to_csv(records: &[EigenvalueRecord]) -> Result<String> {
    // serde writes the header with the first row, so an empty list needs it spelled out
    if records.is_empty() {
        return Ok("alpha,n,mu,lambda,delta,residual,method,precision_bits\n".into());
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(RecordRow::from(r)).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| SpectraError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| SpectraError::Io(e.to_string()))
}

pub fn records_from_csv(input: impl Read) -> Result<Vec<EigenvalueRecord>> {
    csv::Reader::from_reader(input)
        .deserialize::<RecordRow>()
        .map(|row| row.map_err(csv_err)?.to_record())
        .collect()
}

pub fn records_to_json(records: &[EigenvalueRecord]) -> Result<String> {
    let rows: Vec<RecordRow> = records.iter().map(RecordRow::from).collect();
    serde_json::to_string_pretty(&rows).map_err(json_err)
}

pub fn records_from_json(input: &str) -> Result<Vec<EigenvalueRecord>> {
    let rows: Vec<RecordRow> = serde_json::from_str(input).map_err(json_err)?;
    rows.iter().map(RecordRow::to_record).collect()
}

fn shortest(x: f64) -> String {
    if x.is_finite() {
        format!("{x:e}")
    } else if x.is_nan() {
        "NaN".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

pub fn scan_to_csv(rows: &[ScanRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["mu", "log_abs_det_scaled", "smallest_singular_value"]).map_err(csv_err)?;
    for r in rows {
        w.write_record([shortest(r.mu), shortest(r.log_abs_det_scaled), shortest(r.smallest_singular_value)])
            .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| SpectraError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| SpectraError::Io(e.to_string()))
}

pub fn scan_from_csv(input: impl Read) -> Result<Vec<ScanRow>> {
    let mut out = Vec::new();
    for rec in csv::Reader::from_reader(input).records() {
        let rec = rec.map_err(csv_err)?;
        let field = |i: usize| -> Result<f64> {
            let s = rec.get(i).ok_or_else(|| SpectraError::Io(format!("missing column {i}")))?;
            s.parse::<f64>().map_err(|e| SpectraError::Io(format!("bad number `{s}`: {e}")))
        };
        out.push(ScanRow { mu: field(0)?, log_abs_det_scaled: field(1)?, smallest_singular_value: field(2)? });
    }
    Ok(out)
}

pub fn scan_to_json(rows: &[ScanRow]) -> Result<String> {
    serde_json::to_string_pretty(rows).map_err(json_err)
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

/// Single-curve SVG line chart of the smallest singular value against `μ/π`.
///
/// Output depends only on `rows` and `title`.
pub fn scan_to_svg(rows: &[ScanRow], title: &str) -> String {
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.smallest_singular_value.is_finite())
        .map(|r| (r.mu / std::f64::consts::PI, r.smallest_singular_value))
        .collect();
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#, WIDTH / 2.0, escape(title));
    if pts.is_empty() {
        svg.push_str("</svg>\n");
        return svg;
    }
    let (x0, x1) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.0), b.max(p.0)));
    let y1 = pts.iter().fold(0f64, |m, p| m.max(p.1));
    let xspan = if x1 > x0 { x1 - x0 } else { 1.0 };
    let yspan = if y1 > 0.0 { y1 } else { 1.0 };
    let px = |x: f64| MARGIN + (x - x0) / xspan * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - y / yspan * (HEIGHT - 2.0 * MARGIN);

    let _ = writeln!(
        svg,
        r#"<path d="M{m:.2} {b:.2} H{r:.2} M{m:.2} {b:.2} V{t:.2}" stroke="black" fill="none"/>"#,
        m = MARGIN,
        b = HEIGHT - MARGIN,
        r = WIDTH - MARGIN,
        t = MARGIN
    );
    let first = x0.ceil() as i64;
    let last = x1.floor() as i64;
    let stride = ((last - first) / 20).max(1);
    for k in (first..=last).step_by(stride as usize) {
        let x = px(k as f64);
        let _ = writeln!(
            svg,
            r#"<line x1="{x:.2}" y1="{b:.2}" x2="{x:.2}" y2="{t:.2}" stroke="black"/><text x="{x:.2}" y="{l:.2}" text-anchor="middle" font-family="sans-serif" font-size="10">{k}</text>"#,
            b = HEIGHT - MARGIN,
            t = HEIGHT - MARGIN + 5.0,
            l = HEIGHT - MARGIN + 18.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{}" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12">mu / pi</text>"#,
        WIDTH / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        svg,
        r#"<text x="15" y="{}" text-anchor="middle" font-family="sans-serif" font-size="12" transform="rotate(-90 15 {})">smallest singular value</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    let mut d = String::new();
    for (i, (x, y)) in pts.iter().enumerate() {
        let _ = write!(d, "{}{:.2} {:.2}", if i == 0 { "M" } else { " L" }, px(*x), py(*y));
    }
    let _ = writeln!(svg, r#"<path d="{d}" stroke="steelblue" stroke-width="1.5" fill="none"/>"#);
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| SpectraError::Io(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.as_file().sync_all().map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rug::Float;

    fn rec(bits: u32, mu: f64) -> EigenvalueRecord {
        let mu = Float::with_val(bits, mu) / 3u32;
        EigenvalueRecord {
            alpha: 2,
            n: 1,
            lambda: Float::with_val(bits, &mu * &mu),
            delta: Float::with_val(bits, -1e-20),
            residual: Float::new(bits),
            mu,
            precision_bits: bits,
            method: Method::ClosedFormAlpha2,
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        for bits in [53, 64, 256] {
            let records = vec![rec(bits, 14.19), rec(bits, 1e-3)];
            let text = records_to_csv(&records).unwrap();
            assert!(text.starts_with("alpha,n,mu,lambda,delta,residual,method,precision_bits\n"));
            assert_eq!(records_from_csv(text.as_bytes()).unwrap(), records);
            let json = records_to_json(&records).unwrap();
            assert_eq!(records_from_json(&json).unwrap(), records);
        }
    }

    #[test]
    fn empty_csv_keeps_header() {
        assert_eq!(records_to_csv(&[]).unwrap().lines().count(), 1);
    }

    #[test]
    fn scan_csv_round_trip() {
        let rows = vec![
            ScanRow { mu: 0.1, log_abs_det_scaled: -3.5, smallest_singular_value: 1.0 / 3.0 },
            ScanRow { mu: 0.2, log_abs_det_scaled: f64::NEG_INFINITY, smallest_singular_value: 0.0 },
        ];
        let text = scan_to_csv(&rows).unwrap();
        assert_eq!(scan_from_csv(text.as_bytes()).unwrap(), rows);
    }

    #[test]
    fn svg_is_deterministic() {
        let rows: Vec<ScanRow> = (1..50)
            .map(|i| ScanRow { mu: i as f64 * 0.2, log_abs_det_scaled: 0.0, smallest_singular_value: (i as f64).sin().abs() })
            .collect();
        let a = scan_to_svg(&rows, "t");
        assert_eq!(a, scan_to_svg(&rows, "t"));
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert!(a.contains("mu / pi"));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        write_atomic(&path, "one").unwrap();
        write_atomic(&path, "two").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
