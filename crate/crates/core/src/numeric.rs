//! Multiprecision real and complex helpers on top of MPFR floats.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

use crate::error::{Result, SpectraError};

/// Native double precision, the smallest precision accepted anywhere.
pub const NATIVE_PRECISION: u32 = 53;

/// Precision used where the extended mode is required.
pub const EXTENDED_PRECISION: u32 = 256;

pub(crate) fn check_precision(bits: u32) -> Result<()> {
    if bits < NATIVE_PRECISION {
        return Err(SpectraError::Configuration(format!(
            "precision_bits must be at least {NATIVE_PRECISION}, got {bits}"
        )));
    }
    Ok(())
}

pub fn real(bits: u32, v: f64) -> Float {
    Float::with_val(bits, v)
}

pub fn pi(bits: u32) -> Float {
    Float::with_val(bits, Constant::Pi)
}

/// `π·num/den` at the given precision.
pub fn pi_fraction(bits: u32, num: i64, den: i64) -> Float {
    let mut x = pi(bits);
    x *= num;
    x /= den;
    x
}

pub fn sqrt3(bits: u32) -> Float {
    Float::with_val(bits, 3).sqrt()
}

/// Decimal digits that guarantee a round trip at `bits` of precision.
pub fn round_trip_digits(bits: u32) -> usize {
    (f64::from(bits) * std::f64::consts::LOG10_2).ceil() as usize + 2
}

/// Formats a float so that parsing it back at the same precision is bit exact.
///
/// Native precision uses the shortest round-trip `f64` form.
pub fn format_float(x: &Float) -> String {
    if x.prec() == NATIVE_PRECISION {
        let v = x.to_f64();
        if v == 0.0 {
            return "0".to_string();
        }
        return format!("{v:e}");
    }
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_string_radix(10, Some(round_trip_digits(x.prec())))
}

/// Parses a decimal produced by [`format_float`].
pub fn parse_float(s: &str, bits: u32) -> Result<Float> {
    let parsed = Float::parse(s.trim())
        .map_err(|e| SpectraError::Domain(format!("cannot parse `{s}` as a number: {e}")))?;
    Ok(Float::with_val(bits, parsed))
}

/// Complex number with MPFR components of a common precision.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Float,
    pub im: Float,
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:e} {:+e}i)", self.re.to_f64(), self.im.to_f64())
    }
}

impl Complex {
    pub fn new(re: Float, im: Float) -> Self {
        let bits = re.prec().max(im.prec());
        Complex {
            re: Float::with_val(bits, re),
            im: Float::with_val(bits, im),
        }
    }

    pub fn zero(bits: u32) -> Self {
        Complex {
            re: Float::new(bits),
            im: Float::new(bits),
        }
    }

    pub fn one(bits: u32) -> Self {
        Complex {
            re: Float::with_val(bits, 1),
            im: Float::new(bits),
        }
    }

    pub fn from_f64(bits: u32, re: f64, im: f64) -> Self {
        Complex {
            re: Float::with_val(bits, re),
            im: Float::with_val(bits, im),
        }
    }

    pub fn from_real(x: &Float) -> Self {
        Complex {
            re: x.clone(),
            im: Float::new(x.prec()),
        }
    }

    /// `e^{iθ}`.
    pub fn cis(theta: &Float) -> Self {
        let bits = theta.prec();
        let (s, c) = theta.clone().sin_cos(Float::new(bits));
        Complex { re: c, im: s }
    }

    /// `r·e^{iθ}`.
    pub fn from_polar(r: &Float, theta: &Float) -> Self {
        Complex::cis(theta).scale(r)
    }

    /// `e^{z}`.
    pub fn exp(&self) -> Self {
        let r = self.re.clone().exp();
        Complex::from_polar(&r, &self.im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> Float {
        let bits = self.prec();
        let mut n = Float::with_val(bits, self.re.square_ref());
        n += Float::with_val(bits, self.im.square_ref());
        n
    }

    pub fn abs(&self) -> Float {
        Float::with_val(self.prec(), self.re.hypot_ref(&self.im))
    }

    pub fn arg(&self) -> Float {
        Float::with_val(self.prec(), self.im.atan2_ref(&self.re))
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn scale(&self, k: &Float) -> Self {
        let bits = self.prec();
        Complex {
            re: Float::with_val(bits, &self.re * k),
            im: Float::with_val(bits, &self.im * k),
        }
    }

    pub fn inv(&self) -> Self {
        let n = self.norm_sqr();
        let bits = self.prec();
        Complex {
            re: Float::with_val(bits, &self.re / &n),
            im: Float::with_val(bits, -(self.im.clone()) / &n),
        }
    }

    pub fn div(&self, other: &Complex) -> Self {
        self * &other.inv()
    }

    /// Integer power by repeated squaring.
    pub fn powi(&self, mut k: i64) -> Self {
        let bits = self.prec();
        let mut base = if k < 0 { self.inv() } else { self.clone() };
        k = k.abs();
        let mut acc = Complex::one(bits);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    pub fn with_prec(&self, bits: u32) -> Self {
        Complex {
            re: Float::with_val(bits, &self.re),
            im: Float::with_val(bits, &self.im),
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for &Complex {
    type Output = Complex;
    fn add(self, rhs: &Complex) -> Complex {
        let bits = self.prec();
        Complex {
            re: Float::with_val(bits, &self.re + &rhs.re),
            im: Float::with_val(bits, &self.im + &rhs.im),
        }
    }
}

impl Sub for &Complex {
    type Output = Complex;
    fn sub(self, rhs: &Complex) -> Complex {
        let bits = self.prec();
        Complex {
            re: Float::with_val(bits, &self.re - &rhs.re),
            im: Float::with_val(bits, &self.im - &rhs.im),
        }
    }
}

impl Mul for &Complex {
    type Output = Complex;
    fn mul(self, rhs: &Complex) -> Complex {
        let bits = self.prec();
        let mut re = Float::with_val(bits, &self.re * &rhs.re);
        re -= Float::with_val(bits, &self.im * &rhs.im);
        let mut im = Float::with_val(bits, &self.re * &rhs.im);
        im += Float::with_val(bits, &self.im * &rhs.re);
        Complex { re, im }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

/// Relative distance `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn rel_diff(a: &Complex, b: &Complex) -> f64 {
    let scale = a.abs().max(&b.abs());
    if scale.is_zero() {
        return 0.0;
    }
    let d = (a - b).abs();
    Float::with_val(a.prec(), d / scale).to_f64()
}
