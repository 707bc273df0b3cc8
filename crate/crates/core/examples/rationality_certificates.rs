//! Which orders have an arithmetic progression in their spectrum, with the
//! exact certificate behind each answer.
//!
//!     cargo run --release --example rationality_certificates -- [alpha]

use canonical_spectra::number_theory::{has_arithmetic_progression, is_cos_rational, CertificateStatus};

fn main() -> canonical_spectra::Result<()> {
    if let Some(alpha) = std::env::args().nth(1).and_then(|a| a.parse::<u64>().ok()) {
        println!("{}", is_cos_rational(alpha)?.to_json()?);
        return Ok(());
    }

    println!("{:>5}  {:>9}  {:>4}  {:>6}  {:>10}  {:<11}  progression", "alpha", "cos(pi/a)", "beta", "degree", "candidates", "status");
    for alpha in 1..=30 {
        let v = is_cos_rational(alpha)?;
        let value = v.value.as_ref().map_or("irrational".to_string(), |r| r.to_string());
        let degree = v
            .witness_polynomial
            .as_ref()
            .and_then(|p| p.degree())
            .map_or("-".to_string(), |d| d.to_string());
        let beta = v.witness_divisor.map_or("-".to_string(), |b| b.to_string());
        let status = match v.status {
            CertificateStatus::Exact => "exact",
            CertificateStatus::Certified => "certified",
            CertificateStatus::Deferred => "deferred",
            CertificateStatus::Failed => "FAILED",
        };
        println!(
            "{alpha:>5}  {value:>9}  {beta:>4}  {degree:>6}  {:>10}  {status:<11}  {}",
            v.candidates_checked.len(),
            has_arithmetic_progression(alpha)?
        );
    }
    Ok(())
}
