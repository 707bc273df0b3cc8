//! Exact decision of whether `cos(π/α)` is rational, and with it whether the
//! spectrum contains an arithmetic progression.
//!
//! Irrationality is refuted through a divisor `β` of `α` and an integer
//! polynomial `P` built from iterates of `φ(y) = 2y² − 1` with
//! `P(cos(π/β)) = 0`. Every rational-root-theorem candidate of `P` is
//! evaluated exactly; any rational root found lies outside `(1/2, 1)`, where
//! `cos(π/β)` lives for `β ≥ 4`.

mod poly;

pub use poly::IntPolynomial;
use poly::eval_residues;

use rayon::prelude::*;
use rug::integer::IsPrime;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde::{Serialize, Serializer};

use crate::error::{Result, SpectraError};
use crate::numeric::pi_fraction;

/// Largest `n` for which `phi_iterate` materializes `φⁿ` (degree `2ⁿ`).
pub const MAX_PHI_ITERATE: u32 = 16;

/// Largest prime `β` whose witness `φ^{β−1}(y) + y` is built and scanned.
pub const MAX_WITNESS_PRIME: u64 = 13;

/// Degree up to which candidates are evaluated as exact rationals; above it a
/// nonzero residue modulo a large prime stands in as the exact certificate.
pub const EXACT_DEGREE_LIMIT: usize = 256;

const MAX_CANDIDATES: usize = 1 << 20;

/// Odd primes used for modular certificates.
pub const CERTIFICATE_PRIMES: [u64; 3] = [
    (1 << 61) - 1,
    (1 << 62) - 57,
    (1 << 63) - 25,
];

const WITNESS_CHECK_BITS: u32 = 128;

/// `φⁿ(y)`, the Chebyshev polynomial `T_{2ⁿ}`.
pub fn phi_iterate(n: u32) -> Result<IntPolynomial> {
    if n == 0 {
        return Err(SpectraError::Domain("phi_iterate needs n >= 1".into()));
    }
    if n > MAX_PHI_ITERATE {
        return Err(SpectraError::ResourceLimit(format!(
            "phi^{n} has degree 2^{n}; dense construction is capped at n = {MAX_PHI_ITERATE}"
        )));
    }
    let m: u64 = 1 << n;
    let mut coeffs = vec![Integer::new(); m as usize + 1];
    // coefficient of y^{m−2k}: (−1)^k · m/(m−k) · C(m−k, k) · 2^{m−2k−1}
    let mut binom = Integer::from(1);
    for k in 0..=m / 2 {
        let mut c = Integer::from(&binom * m) << (m - 2 * k) as u32;
        c.div_exact_mut(&Integer::from(2 * (m - k)));
        if k % 2 == 1 {
            c = -c;
        }
        coeffs[(m - 2 * k) as usize] = c;
        if k < m / 2 {
            // C(m−k−1, k+1) = C(m−k, k)·(m−2k)(m−2k−1) / ((k+1)(m−k))
            binom *= (m - 2 * k) * (m - 2 * k - 1);
            binom.div_exact_mut(&(Integer::from(k + 1) * (m - k)));
        }
    }
    Ok(IntPolynomial::new(coeffs))
}

/// Divisor `β` of `α` and integer polynomial `P` with `P(cos(π/β)) = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub beta: u64,
    pub polynomial: IntPolynomial,
    /// `(−1)^ℓ` in `φⁿ(cos(π/β)) = (−1)^ℓ cos(π/β)`; absent for `β ∈ {4, 6}`.
    pub sign: Option<i8>,
}

fn is_prime(n: u64) -> bool {
    Integer::from(n).is_probably_prime(30) != IsPrime::No
}

/// `log₂` of the witness degree for `β`, or `None` if `β` is not a usable target.
fn witness_log_degree(beta: u64) -> Option<u64> {
    match beta {
        4 => Some(1),
        6 => Some(2),
        9 => Some(6),
        p if p >= 5 && is_prime(p) => Some(p - 1),
        _ => None,
    }
}

fn usable_divisors(alpha: u64) -> Vec<u64> {
    (4..=alpha)
        .filter(|b| alpha.is_multiple_of(*b) && witness_log_degree(*b).is_some())
        .collect()
}

fn build_witness(beta: u64) -> Result<Witness> {
    match beta {
        4 => Ok(Witness { beta, polynomial: phi_iterate(1)?, sign: None }),
        6 => {
            let p = phi_iterate(2)?.scale(&Integer::from(2)).add(&IntPolynomial::from_i64(&[1]));
            Ok(Witness { beta, polynomial: p, sign: None })
        }
        _ => {
            let n = if beta == 9 { 6 } else { (beta - 1) as u32 };
            let two_n = Integer::from(1) << n;
            let (ell, rem) = (two_n - 1u32).div_rem(Integer::from(beta));
            if rem != 0 {
                return Err(SpectraError::InternalConsistency(format!(
                    "2^{n} is not 1 modulo {beta}"
                )));
            }
            let sign: i8 = if ell.is_odd() { -1 } else { 1 };
            let y = IntPolynomial::y().scale(&Integer::from(sign));
            Ok(Witness { beta, polynomial: phi_iterate(n)?.sub(&y), sign: Some(sign) })
        }
    }
}

/// Picks the divisor of `α` with the cheapest witness and builds it.
pub fn witness_polynomial(alpha: u64) -> Result<Witness> {
    if alpha < 4 {
        return Err(SpectraError::Domain(format!(
            "cos(pi/{alpha}) is rational; no witness exists for alpha < 4"
        )));
    }
    let divisors = usable_divisors(alpha);
    let best = divisors
        .iter()
        .copied()
        .filter(|&b| b <= MAX_WITNESS_PRIME || !is_prime(b))
        .min_by_key(|&b| (witness_log_degree(b), b));
    match best {
        Some(beta) => build_witness(beta),
        None => Err(SpectraError::ResourceLimit(format!(
            "every witness divisor of {alpha} is a prime above {MAX_WITNESS_PRIME} (smallest: {}); \
             degree 2^(p-1) is out of reach",
            divisors.first().copied().unwrap_or(alpha)
        ))),
    }
}

/// Exact value of `P` at a candidate, or a nonzero residue that proves `P ≠ 0` there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateValue {
    Exact(Rational),
    NonzeroModulo { modulus: u64, residue: u64 },
}

impl CandidateValue {
    pub fn is_zero(&self) -> bool {
        matches!(self, CandidateValue::Exact(v) if *v == 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateEvaluation {
    pub candidate: Rational,
    pub value: CandidateValue,
}

impl CandidateEvaluation {
    pub fn is_root(&self) -> bool {
        self.value.is_zero()
    }
}

impl Serialize for CandidateEvaluation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("candidate", &self.candidate.to_string())?;
        match &self.value {
            CandidateValue::Exact(v) => map.serialize_entry("value", &v.to_string())?,
            CandidateValue::NonzeroModulo { modulus, residue } => {
                map.serialize_entry("modulus", &modulus.to_string())?;
                map.serialize_entry("residue", &residue.to_string())?;
            }
        }
        map.end()
    }
}

/// Positive divisors of `n ≠ 0`, ascending.
fn divisors(n: &Integer) -> Result<Vec<Integer>> {
    let mut rest = n.clone().abs();
    let mut factors: Vec<(Integer, u32)> = Vec::new();
    let twos = rest.remove_factor_mut(&Integer::from(2));
    if twos > 0 {
        factors.push((Integer::from(2), twos));
    }
    let mut d = 3u64;
    while rest > 1 && d < 1_000_000 && d * d <= rest {
        let e = rest.remove_factor_mut(&Integer::from(d));
        if e > 0 {
            factors.push((Integer::from(d), e));
        }
        d += 2;
    }
    if rest > 1 {
        if Integer::from(d) * d > rest || rest.is_probably_prime(30) != IsPrime::No {
            factors.push((rest, 1));
        } else {
            return Err(SpectraError::ResourceLimit(
                "cannot factor a coefficient by trial division".into(),
            ));
        }
    }
    let count: usize = factors.iter().map(|(_, e)| *e as usize + 1).product();
    if count > MAX_CANDIDATES {
        return Err(SpectraError::ResourceLimit(format!("{count} divisors exceed the candidate cap")));
    }
    let mut out = vec![Integer::from(1)];
    for (p, e) in &factors {
        let mut next = Vec::with_capacity(out.len() * (*e as usize + 1));
        for d in &out {
            let mut pw = d.clone();
            next.push(pw.clone());
            for _ in 0..*e {
                pw *= p;
                next.push(pw.clone());
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

fn evaluate(poly: &IntPolynomial, x: &Rational, residues: &[(u64, Vec<u64>)]) -> CandidateValue {
    let deg = poly.degree().unwrap_or(0);
    let (num, den) = (x.numer(), x.denom());
    if deg > EXACT_DEGREE_LIMIT {
        for (q, res) in residues {
            if den.is_divisible(&Integer::from(*q)) {
                continue;
            }
            let r = eval_residues(res, num, den, *q);
            if r != 0 {
                return CandidateValue::NonzeroModulo { modulus: *q, residue: r };
            }
        }
    }
    let scaled = poly.eval_homogeneous(num, den);
    let den_pow = Integer::from(den.pow(deg as u32));
    CandidateValue::Exact(Rational::from((scaled, den_pow)))
}

/// Every `±p/q` with `p | a₀` and `q | a_m` (after removing a factor `y^j`),
/// together with `P` evaluated there. A zero constant term adds the candidate 0.
pub fn rational_root_scan(poly: &IntPolynomial) -> Result<Vec<CandidateEvaluation>> {
    if poly.is_zero() {
        return Err(SpectraError::Domain("the zero polynomial has every number as a root".into()));
    }
    let low = poly.coeffs().iter().position(|c| *c != 0).unwrap_or(0);
    let reduced = IntPolynomial::new(poly.coeffs()[low..].to_vec());
    let mut out = Vec::new();
    if low > 0 {
        out.push(CandidateEvaluation {
            candidate: Rational::new(),
            value: CandidateValue::Exact(Rational::new()),
        });
    }
    if reduced.degree() == Some(0) {
        return Ok(out);
    }
    let ps = divisors(&reduced.constant())?;
    let qs = divisors(&reduced.leading())?;
    if ps.len().saturating_mul(qs.len()) > MAX_CANDIDATES {
        return Err(SpectraError::ResourceLimit("too many rational-root candidates".into()));
    }
    let mut cands: Vec<Rational> = Vec::new();
    for q in &qs {
        for p in &ps {
            if Integer::from(p.gcd_ref(q)) == 1 {
                let r = Rational::from((p.clone(), q.clone()));
                cands.push(-r.clone());
                cands.push(r);
            }
        }
    }
    cands.sort();
    let residues: Vec<(u64, Vec<u64>)> = if poly.degree().unwrap_or(0) > EXACT_DEGREE_LIMIT {
        CERTIFICATE_PRIMES.iter().map(|&q| (q, poly.residues(q))).collect()
    } else {
        Vec::new()
    };
    out.extend(cands.into_par_iter().map(|c| {
        let value = evaluate(poly, &c, &residues);
        CandidateEvaluation { candidate: c, value }
    }).collect::<Vec<_>>());
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    /// Exact value of a rational cosine.
    Exact,
    /// Witness built, every candidate evaluated, every rational root outside `(1/2, 1)`.
    Certified,
    /// Irrational by the classical theorem; the witness was too large to build.
    Deferred,
    /// The certificate does not close; never expected.
    Failed,
}

#[derive(Debug, Clone, Serialize)]
pub struct RationalityVerdict {
    pub alpha: u64,
    pub is_rational: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub value: Option<Rational>,
    pub witness_divisor: Option<u64>,
    pub witness_polynomial: Option<IntPolynomial>,
    pub sign: Option<i8>,
    pub candidates_checked: Vec<CandidateEvaluation>,
    /// Candidates where `P` vanishes; none may lie in `(1/2, 1)`.
    #[serde(serialize_with = "ser_rationals")]
    pub rational_roots: Vec<Rational>,
    /// `|P(cos(π/β))|` at 128-bit precision.
    pub witness_residual: Option<f64>,
    pub status: CertificateStatus,
    pub note: Option<String>,
}

fn ser_opt_rational<S: Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn ser_rationals<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

impl RationalityVerdict {
    pub fn is_nonzero_rational(&self) -> bool {
        self.is_rational && self.value.as_ref().is_some_and(|v| *v != 0)
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| SpectraError::Io(e.to_string()))
    }
}

fn in_open_half_one(r: &Rational) -> bool {
    *r > Rational::from((1, 2)) && *r < 1
}

fn certify(alpha: u64, w: Witness) -> Result<RationalityVerdict> {
    let candidates = rational_root_scan(&w.polynomial)?;
    let roots: Vec<Rational> =
        candidates.iter().filter(|c| c.is_root()).map(|c| c.candidate.clone()).collect();
    let x = pi_fraction(WITNESS_CHECK_BITS, 1, w.beta as i64).cos();
    let residual = w.polynomial.eval_float(&x).abs().to_f64();
    let x_in_range = x > 0.5 && x < 1;
    let closes = !candidates.is_empty()
        && roots.iter().all(|r| !in_open_half_one(r))
        && x_in_range
        && residual < 1e-25;
    Ok(RationalityVerdict {
        alpha,
        is_rational: false,
        value: None,
        witness_divisor: Some(w.beta),
        witness_polynomial: Some(w.polynomial),
        sign: w.sign,
        candidates_checked: candidates,
        rational_roots: roots,
        witness_residual: Some(residual),
        status: if closes { CertificateStatus::Certified } else { CertificateStatus::Failed },
        note: None,
    })
}

pub fn is_cos_rational(alpha: u64) -> Result<RationalityVerdict> {
    let exact = match alpha {
        0 => return Err(SpectraError::Domain("alpha must be at least 1".into())),
        1 => Some(Rational::from(-1)),
        2 => Some(Rational::new()),
        3 => Some(Rational::from((1, 2))),
        _ => None,
    };
    if let Some(v) = exact {
        return Ok(RationalityVerdict {
            alpha,
            is_rational: true,
            value: Some(v),
            witness_divisor: None,
            witness_polynomial: None,
            sign: None,
            candidates_checked: Vec::new(),
            rational_roots: Vec::new(),
            witness_residual: None,
            status: CertificateStatus::Exact,
            note: None,
        });
    }
    match witness_polynomial(alpha) {
        Ok(w) => certify(alpha, w),
        Err(SpectraError::ResourceLimit(msg)) => Ok(RationalityVerdict {
            alpha,
            is_rational: false,
            value: None,
            witness_divisor: usable_divisors(alpha).first().copied(),
            witness_polynomial: None,
            sign: None,
            candidates_checked: Vec::new(),
            rational_roots: Vec::new(),
            witness_residual: None,
            status: CertificateStatus::Deferred,
            note: Some(format!("{msg}; irrationality assumed from Niven's theorem")),
        }),
        Err(e) => Err(e),
    }
}

/// Whether the spectrum contains an infinite arithmetic progression,
/// i.e. whether `cos(π/α)` is a nonzero rational.
pub fn has_arithmetic_progression(alpha: u64) -> Result<bool> {
    if alpha == 0 {
        return Err(SpectraError::Domain("alpha must be at least 1".into()));
    }
    // α ≥ 4 never needs the witness: its cosine lies strictly inside (1/2, 1)
    Ok(alpha == 1 || alpha == 3)
}

/// `cos(π/α)` as an MPFR float, for cross-checks against exact verdicts.
pub fn cos_pi_over(alpha: u64, bits: u32) -> Float {
    pi_fraction(bits, 1, alpha as i64).cos()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn phi() -> IntPolynomial {
        IntPolynomial::from_i64(&[-1, 0, 2])
    }

    #[test]
    fn first_iterates() {
        assert_eq!(phi_iterate(1).unwrap(), phi());
        assert_eq!(phi_iterate(2).unwrap(), IntPolynomial::from_i64(&[1, 0, -8, 0, 8]));
        assert_eq!(phi_iterate(2).unwrap().eval_integer(&Integer::new()), 1);
        assert!(matches!(phi_iterate(0), Err(SpectraError::Domain(_))));
        assert!(matches!(phi_iterate(20), Err(SpectraError::ResourceLimit(_))));
    }

    #[test]
    fn degree_leading_constant_laws() {
        for n in 1..=12u32 {
            let p = phi_iterate(n).unwrap();
            let m = 1usize << n;
            assert_eq!(p.degree(), Some(m));
            assert_eq!(p.leading(), Integer::from(1) << (m as u32 - 1));
            let want = if n >= 2 { 1 } else { -1 };
            assert_eq!(p.constant(), want);
        }
    }

    #[test]
    fn closed_form_matches_composition() {
        let mut it = phi();
        for n in 2..=8u32 {
            it = it.compose(&phi());
            assert_eq!(phi_iterate(n).unwrap(), it, "n = {n}");
        }
    }

    #[test]
    fn semigroup() {
        for m in 1..=5u32 {
            for n in 1..=(10 - m).min(5) {
                let lhs = phi_iterate(m + n).unwrap();
                let rhs = phi_iterate(m).unwrap().compose(&phi_iterate(n).unwrap());
                assert_eq!(lhs, rhs, "m = {m}, n = {n}");
            }
        }
    }

    #[test]
    fn trig_consistency() {
        for alpha in 1..=12u64 {
            let x = cos_pi_over(alpha, 128);
            for n in 1..=8u32 {
                let got = phi_iterate(n).unwrap().eval_float(&x);
                let want = pi_fraction(128, 1i64 << n, alpha as i64).cos();
                let err = Float::with_val(128, got - want).abs().to_f64();
                assert!(err < 1e-25, "alpha = {alpha}, n = {n}: {err:e}");
            }
        }
    }

    #[test]
    fn witness_choices() {
        let w = witness_polynomial(9).unwrap();
        assert_eq!((w.beta, w.sign), (9, Some(-1)));
        assert_eq!(w.polynomial, phi_iterate(6).unwrap().add(&IntPolynomial::y()));

        let w = witness_polynomial(5).unwrap();
        assert_eq!((w.beta, w.polynomial.degree()), (5, Some(16)));
        assert_eq!(w.polynomial, phi_iterate(4).unwrap().add(&IntPolynomial::y()));
        let r = w.polynomial.eval_float(&cos_pi_over(5, 128)).abs();
        assert!(r < 1e-30);

        assert_eq!(witness_polynomial(12).unwrap().polynomial, phi());
        let w6 = witness_polynomial(6).unwrap();
        assert_eq!(w6.polynomial, IntPolynomial::from_i64(&[3, 0, -16, 0, 16]));
        assert_eq!(witness_polynomial(18).unwrap().beta, 6);
        assert_eq!(witness_polynomial(22).unwrap().beta, 11);
        assert!(matches!(witness_polynomial(17), Err(SpectraError::ResourceLimit(_))));
        assert!(matches!(witness_polynomial(3), Err(SpectraError::Domain(_))));
    }

    #[test]
    fn every_alpha_from_four_has_a_usable_divisor() {
        for alpha in 4..=500u64 {
            assert!(!usable_divisors(alpha).is_empty(), "alpha = {alpha}");
        }
    }

    #[test]
    fn scan_of_two_y_squared_minus_one() {
        let scan = rational_root_scan(&phi()).unwrap();
        let got: Vec<(String, String)> = scan
            .iter()
            .map(|c| match &c.value {
                CandidateValue::Exact(v) => (c.candidate.to_string(), v.to_string()),
                other => panic!("{other:?}"),
            })
            .collect();
        let want = [("-1", "1"), ("-1/2", "-1/2"), ("1/2", "-1/2"), ("1", "1")];
        assert_eq!(got.len(), 4);
        for (c, v) in want {
            assert!(got.contains(&(c.to_string(), v.to_string())), "{c}");
        }
    }

    #[test]
    fn scan_of_cos_pi_six_minimal_polynomial() {
        let scan = rational_root_scan(&IntPolynomial::from_i64(&[-3, 0, 4])).unwrap();
        let mut got: Vec<String> = scan.iter().map(|c| c.candidate.to_string()).collect();
        got.sort();
        let mut want: Vec<String> = ["1", "3", "1/2", "3/2", "1/4", "3/4"]
            .iter()
            .flat_map(|s| [s.to_string(), format!("-{s}")])
            .collect();
        want.sort();
        assert_eq!(got, want);
        assert!(scan.iter().all(|c| !c.is_root()));
    }

    #[test]
    fn scan_edge_cases() {
        assert!(rational_root_scan(&IntPolynomial::zero()).is_err());
        assert!(rational_root_scan(&IntPolynomial::from_i64(&[5])).unwrap().is_empty());
        // y(y − 2)
        let scan = rational_root_scan(&IntPolynomial::from_i64(&[0, -2, 1])).unwrap();
        let roots: Vec<String> = scan.iter().filter(|c| c.is_root()).map(|c| c.candidate.to_string()).collect();
        assert_eq!(roots, ["0", "2"]);
    }

    #[test]
    fn alpha9_witness_has_only_the_boundary_roots() {
        let w = witness_polynomial(9).unwrap();
        let scan = rational_root_scan(&w.polynomial).unwrap();
        assert_eq!(scan.len(), 2 * 64);
        let roots: Vec<String> = scan.iter().filter(|c| c.is_root()).map(|c| c.candidate.to_string()).collect();
        assert_eq!(roots, ["-1", "1/2"]);
    }

    #[test]
    fn modular_certificates_on_large_witness() {
        let v = is_cos_rational(11).unwrap();
        assert_eq!(v.status, CertificateStatus::Certified);
        assert_eq!(v.candidates_checked.len(), 2 * 1024);
        assert!(v
            .candidates_checked
            .iter()
            .any(|c| matches!(c.value, CandidateValue::NonzeroModulo { .. })));
        let roots: Vec<String> = v.rational_roots.iter().map(|r| r.to_string()).collect();
        assert_eq!(roots, ["-1", "1/2"]);
    }

    #[test]
    fn certificate_primes_are_prime() {
        for q in CERTIFICATE_PRIMES {
            assert_ne!(Integer::from(q).is_probably_prime(40), IsPrime::No);
        }
    }

    #[test]
    fn rational_cases() {
        assert_eq!(is_cos_rational(1).unwrap().value, Some(Rational::from(-1)));
        assert_eq!(is_cos_rational(2).unwrap().value, Some(Rational::new()));
        assert_eq!(is_cos_rational(3).unwrap().value, Some(Rational::from((1, 2))));
        assert!(is_cos_rational(0).is_err());
        let v9 = is_cos_rational(9).unwrap();
        assert!(!v9.is_rational);
        assert_eq!(v9.witness_divisor, Some(9));
    }

    #[test]
    fn deferred_verdicts_are_flagged() {
        for alpha in [17u64, 19, 34, 51] {
            let v = is_cos_rational(alpha).unwrap();
            assert!(!v.is_rational);
            assert_eq!(v.status, CertificateStatus::Deferred);
            assert!(v.witness_polynomial.is_none() && v.note.is_some());
        }
    }

    #[test]
    fn progression_exactly_for_one_and_three() {
        for alpha in 1..=60u64 {
            let v = is_cos_rational(alpha).unwrap();
            assert_eq!(has_arithmetic_progression(alpha).unwrap(), v.is_nonzero_rational());
            assert_eq!(has_arithmetic_progression(alpha).unwrap(), alpha == 1 || alpha == 3);
        }
        assert!(has_arithmetic_progression(0).is_err());
    }

    #[test]
    fn json_certificate() {
        let v = is_cos_rational(6).unwrap();
        let j: serde_json::Value = serde_json::from_str(&v.to_json().unwrap()).unwrap();
        assert_eq!(j["witness_divisor"], 6);
        assert_eq!(j["witness_polynomial"][0], "3");
        assert_eq!(j["status"], "certified");
        assert_eq!(j["rational_roots"], serde_json::json!(["-1/2", "1/2"]));
        let r = is_cos_rational(3).unwrap().to_json().unwrap();
        assert!(r.contains("\"1/2\""));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn verdict_law(alpha in 1u64..=60) {
            let v = is_cos_rational(alpha).unwrap();
            prop_assert_eq!(v.is_rational, alpha <= 3);
            if !v.is_rational && v.status != CertificateStatus::Deferred {
                prop_assert_eq!(v.status, CertificateStatus::Certified);
                prop_assert!(!v.candidates_checked.is_empty());
                prop_assert!(v.rational_roots.iter().all(|r| !in_open_half_one(r)));
                prop_assert_eq!(alpha % v.witness_divisor.unwrap(), 0);
            }
        }
    }
}
