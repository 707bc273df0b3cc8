//! The clamped Euler-Bernoulli beam (α = 2): roots of `cos μ cosh μ = 1`.
//!
//!     cargo run --release --example clamped_beam_alpha2

use canonical_spectra::eigensolver::{min_eigenvalue, spectrum};
use canonical_spectra::exact_forms::eq2_residual;
use canonical_spectra::spectral_matrix::OperatorOrder;
use canonical_spectra::verification::alpha2_offset_ratios;

fn main() -> canonical_spectra::Result<()> {
    let order = OperatorOrder::new(2)?;
    let min = min_eigenvalue(order, 128)?;
    println!("mu_min     = {:.12}", min.mu.to_f64());
    println!("lambda_min = {:.8}", min.lambda.to_f64());
    println!("residual of cos mu cosh mu = 1: {:.2e}\n", eq2_residual(&min.mu).to_f64().abs());

    for r in &spectrum(order, 6, 128)?.records {
        println!("n = {}  mu = {:.12}  delta = {:+.6e}", r.n, r.mu.to_f64(), r.delta.to_f64());
    }

    // δ_n against 2(−1)^{n+1} e^{−π/2} e^{−nπ}
    println!();
    for (n, ratio) in alpha2_offset_ratios(8)? {
        println!("n = {n}  delta / law = {ratio:.8}");
    }
    Ok(())
}
