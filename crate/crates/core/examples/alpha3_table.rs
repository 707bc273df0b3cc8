//! The sixth-order problem: odd-index roots sit exponentially close to
//! `nπ`, even-index roots are exactly `nπ`.
//!
//!     cargo run --release --example alpha3_table

use canonical_spectra::asymptotics::predict_delta3;
use canonical_spectra::eigensolver::spectrum;
use canonical_spectra::numeric::EXTENDED_PRECISION;
use canonical_spectra::spectral_matrix::OperatorOrder;
use rug::Float;

fn main() -> canonical_spectra::Result<()> {
    let bits = EXTENDED_PRECISION;
    let spec = spectrum(OperatorOrder::new(3)?, 12, bits)?;

    println!("{:>3}  {:>16}  {:>14}  {:>10}  method", "n", "mu", "delta", "predicted");
    for r in &spec.records {
        let predicted = if r.n % 2 == 1 {
            format!("{:.4e}", predict_delta3(r.n as u64, bits)?.to_f64())
        } else {
            "0".to_string()
        };
        println!(
            "{:>3}  {:>16.10}  {:>14.6e}  {:>10}  {}",
            r.n,
            r.mu.to_f64(),
            r.delta.to_f64(),
            predicted,
            r.method
        );
    }

    let n11 = spec.records.iter().find(|r| r.n == 11).expect("n = 11 computed");
    let digits = Float::with_val(64, &n11.delta).to_string_radix(10, Some(8));
    println!("\ndelta_11 = {digits} (still resolved at {bits} bits)");
    Ok(())
}
