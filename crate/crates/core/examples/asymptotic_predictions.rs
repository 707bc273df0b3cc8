//! Second-order predictions of `μ_n` against solver roots, and the rate at
//! which the prediction error decays.
//!
//!     cargo run --release --example asymptotic_predictions -- [alpha]

use canonical_spectra::analysis::log_linear_slope;
use canonical_spectra::asymptotics::predict_mu;
use canonical_spectra::eigensolver::spectrum;
use canonical_spectra::numeric::EXTENDED_PRECISION;
use canonical_spectra::spectral_matrix::OperatorOrder;
use canonical_spectra::verification::{expected_decay_slope, prediction_errors};
use rug::Float;

fn main() -> canonical_spectra::Result<()> {
    let alpha: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(5);
    let bits = EXTENDED_PRECISION;
    let order = OperatorOrder::new(alpha)?;

    println!("alpha = {alpha}");
    println!("{:>3}  {:>22}  {:>12}  {:>10}", "n", "mu", "correction", "error");
    for r in spectrum(order, 12, bits)?.records.iter().filter(|r| r.n >= 2) {
        let p = predict_mu(order, r.n as u64, bits)?;
        let err = Float::with_val(bits, &r.mu - p.value()).abs();
        println!(
            "{:>3}  {:>22.17}  {:>12.3e}  {:>10.2e}",
            r.n,
            r.mu.to_f64(),
            p.correction.to_f64(),
            err.to_f64()
        );
    }

    let pts = prediction_errors(alpha, 10..=20)?;
    let fit = log_linear_slope(&pts)?;
    println!(
        "\nslope of ln|error| over n in [10, 20]: {:.4} (leading rate {:.4})",
        fit.slope,
        expected_decay_slope(alpha)
    );
    Ok(())
}
