//! Lowest eigenvalue against `√(8πα)(4α/e)^{2α}` as the order grows.
//!
//!     cargo run --release --example lambda_min_trend -- [alpha-max]

use canonical_spectra::asymptotics::predict_lambda_min;
use canonical_spectra::eigensolver::min_eigenvalue;
use canonical_spectra::numeric::EXTENDED_PRECISION;
use canonical_spectra::spectral_matrix::OperatorOrder;
use rug::Float;

fn main() -> canonical_spectra::Result<()> {
    let alpha_max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    let bits = EXTENDED_PRECISION;
    println!("{:>5}  {:>10}  {:>14}  {:>8}", "alpha", "mu_min", "lambda_min", "ratio");
    for alpha in 1..=alpha_max {
        let min = min_eigenvalue(OperatorOrder::new(alpha)?, bits)?;
        let ratio = Float::with_val(bits, &min.lambda / predict_lambda_min(alpha, bits)?);
        println!(
            "{alpha:>5}  {:>10.6}  {:>14.6e}  {:>8.5}",
            min.mu.to_f64(),
            min.lambda.to_f64(),
            ratio.to_f64()
        );
    }
    Ok(())
}
