use std::fmt;

use rug::ops::RemRounding;
use rug::{Float, Integer, Rational};
use serde::ser::{Serialize, SerializeSeq, Serializer};

/// Polynomial with arbitrary-size integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<Integer>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The identity polynomial `y`.
    pub fn y() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Integer {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Integer {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> Integer {
        self.coeff(0)
    }

    pub fn add(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, k: &Integer) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| Integer::from(c * k)).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b != 0 {
                    out[i + j] += Integer::from(a * b);
                }
            }
        }
        IntPolynomial::new(out)
    }

    /// `self(inner(y))` by Horner's rule.
    pub fn compose(&self, inner: &IntPolynomial) -> IntPolynomial {
        let mut acc = IntPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&IntPolynomial::new(vec![c.clone()]));
        }
        acc
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    /// `P(num/den)·den^deg`, an integer that vanishes exactly with `P(num/den)`.
    pub fn eval_homogeneous(&self, num: &Integer, den: &Integer) -> Integer {
        let Some(d) = self.degree() else {
            return Integer::new();
        };
        // Σ c_i num^i den^{d−i}, accumulated as Horner in num with den powers
        let mut acc = Integer::new();
        let mut den_pow = Integer::from(1);
        let mut terms = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            terms.push(den_pow.clone());
            den_pow *= den;
        }
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc *= num;
            acc += Integer::from(c * &terms[d - i]);
        }
        acc
    }

    /// Coefficients reduced modulo `q`, lowest degree first.
    pub fn residues(&self, q: u64) -> Vec<u64> {
        let qi = Integer::from(q);
        self.coeffs
            .iter()
            .map(|c| Integer::from(c.rem_euc(&qi)).to_u64().expect("reduced below q"))
            .collect()
    }

    /// `P(num/den) mod q` for a prime `q` not dividing `den`.
    pub fn eval_mod(&self, num: &Integer, den: &Integer, q: u64) -> u64 {
        eval_residues(&self.residues(q), num, den, q)
    }

    /// `P(x)` rounded to the precision of `x`; the evaluation carries enough
    /// guard bits to absorb the cancellation between large coefficients.
    pub fn eval_float(&self, x: &Float) -> Float {
        let bits = x.prec();
        let mut mass = Integer::new();
        for c in &self.coeffs {
            mass += c.clone().abs();
        }
        let guard = mass.significant_bits() + 32;
        let w = bits + guard;
        let xw = Float::with_val(w, x);
        let mut acc = Float::new(w);
        for c in self.coeffs.iter().rev() {
            acc *= &xw;
            acc += c;
        }
        Float::with_val(bits, acc)
    }
}

/// Horner evaluation of reduced coefficients at `num/den mod q`.
pub(crate) fn eval_residues(residues: &[u64], num: &Integer, den: &Integer, q: u64) -> u64 {
    let qi = Integer::from(q);
    let inv = Integer::from(den.invert_ref(&qi).expect("q does not divide den"));
    let x = (num * inv).rem_euc(qi).to_u64().expect("reduced below q") as u128;
    let q128 = q as u128;
    let mut acc: u128 = 0;
    for &c in residues.iter().rev() {
        acc = (acc * x + c as u128) % q128;
    }
    acc as u64
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let neg = *c < 0;
            let mag = c.clone().abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_mag = mag != 1 || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("y")?,
                _ => write!(f, "y^{i}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients as decimal strings, lowest degree first.
impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}
