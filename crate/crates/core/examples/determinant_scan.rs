//! Smallest singular value of the characteristic matrix along the μ-axis,
//! written as CSV and SVG. The dips are the eigenvalues.
//!
//!     cargo run --release --example determinant_scan -- [alpha] [out-dir]

use std::path::PathBuf;

use canonical_spectra::cli::output::{scan_to_csv, scan_to_svg, write_atomic};
use canonical_spectra::eigensolver::find_roots;
use canonical_spectra::scan::{determinant_scan, scan_minima};
use canonical_spectra::spectral_matrix::OperatorOrder;

fn main() -> canonical_spectra::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| std::env::temp_dir().display().to_string()));
    let order = OperatorOrder::new(alpha)?;
    let bits = 64;

    let rows = determinant_scan(order, 5.0, 40.0, 0.1, bits)?;
    let minima = scan_minima(order, &rows, bits)?;
    let roots = find_roots(order, 5.0, 40.0, bits)?;

    println!("{:>12}  {:>12}  {:>9}", "scan minimum", "solver root", "gap");
    for (m, r) in minima.iter().zip(&roots) {
        println!("{m:>12.6}  {:>12.6}  {:>9.1e}", r.to_f64(), (m - r.to_f64()).abs());
    }

    let csv = dir.join(format!("scan_alpha{alpha}.csv"));
    let svg = dir.join(format!("scan_alpha{alpha}.svg"));
    write_atomic(&csv, &scan_to_csv(&rows)?)?;
    write_atomic(&svg, &scan_to_svg(&rows, &format!("alpha = {alpha}")))?;
    println!("\nwrote {} and {}", csv.display(), svg.display());
    Ok(())
}
