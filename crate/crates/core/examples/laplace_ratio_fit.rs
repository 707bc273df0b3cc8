//! The ratio `−K₂/K₁` of the two leading Laplace coefficients: exact
//! products of chord lengths against a least-squares fit of the determinant.
//!
//!     cargo run --release --example laplace_ratio_fit

use canonical_spectra::analysis::fit_laplace_ratio;
use canonical_spectra::numeric::EXTENDED_PRECISION;
use canonical_spectra::spectral_matrix::{laplace_constants, OperatorOrder};
use canonical_spectra::verification::ratio_closed_form;

fn main() -> canonical_spectra::Result<()> {
    let bits = EXTENDED_PRECISION;
    for alpha in 4..=7 {
        let order = OperatorOrder::new(alpha)?;
        let lc = laplace_constants(order, bits)?;
        let closed = ratio_closed_form(alpha, bits).to_f64();
        let products = lc.ratio_from_products().map(|r| format!("{:.12}", r.to_f64()));
        println!("alpha = {alpha}: 2/sin^2(pi/(2 alpha)) = {closed:.12}");
        if let Some(p) = products {
            println!("           S, T products       = {p}");
        }
        for (lo, hi) in [(15.0, 30.0), (40.0, 60.0)] {
            let fit = fit_laplace_ratio(order, lo, hi, 301, bits)?;
            let rel = ((fit.ratio.to_f64() - closed) / closed).abs();
            println!(
                "           fit on [{lo}, {hi}]: {:.12} (rel {rel:.1e}, misfit {:.1e})",
                fit.ratio.to_f64(),
                fit.max_residual
            );
        }
    }
    Ok(())
}
