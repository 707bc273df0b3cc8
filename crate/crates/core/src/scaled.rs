//! Numbers stored as `mantissa · e^exponent`.
//!
//! Entries of the characteristic matrix carry factors such as `e^{μ√3/2}`
//! that leave the native range long before the interesting values of μ are
//! reached. A [`ScaledValue`] keeps the growth in a separate real exponent.

use std::fmt;

use rug::Float;

use crate::numeric::Complex;

#[derive(Clone, PartialEq)]
pub struct ScaledValue {
    mantissa: Complex,
    exponent: Float,
}

impl fmt::Debug for ScaledValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?}·e^{}",
            self.mantissa,
            self.exponent.to_f64()
        )
    }
}

impl ScaledValue {
    /// Builds `mantissa · e^exponent` and normalizes it.
    pub fn new(mantissa: Complex, exponent: Float) -> Self {
        let mut v = ScaledValue { mantissa, exponent };
        v.normalize();
        v
    }

    pub fn zero(bits: u32) -> Self {
        ScaledValue {
            mantissa: Complex::zero(bits),
            exponent: Float::new(bits),
        }
    }

    pub fn from_real(x: &Float) -> Self {
        ScaledValue::new(Complex::from_real(x), Float::new(x.prec()))
    }

    pub fn mantissa(&self) -> &Complex {
        &self.mantissa
    }

    pub fn exponent(&self) -> &Float {
        &self.exponent
    }

    pub fn prec(&self) -> u32 {
        self.mantissa.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Restores `|mantissa| ∈ [1, e)` with an integral exponent, or the
    /// canonical zero.
    fn normalize(&mut self) {
        let bits = self.prec();
        if self.mantissa.is_zero() {
            self.exponent = Float::new(bits);
            return;
        }
        let log_mod = self.mantissa.abs().ln();
        let total = Float::with_val(bits, &log_mod + &self.exponent);
        let whole = total.clone().floor();
        let frac = Float::with_val(bits, &total - &whole);
        // m/|m| · e^{frac}
        let shift = Float::with_val(bits, &frac - &log_mod).exp();
        self.mantissa = self.mantissa.scale(&shift);
        self.exponent = whole;
    }

    /// Natural logarithm of the modulus; `-inf` for zero.
    pub fn ln_abs(&self) -> Float {
        let bits = self.prec();
        if self.is_zero() {
            return Float::with_val(bits, f64::NEG_INFINITY);
        }
        Float::with_val(bits, self.mantissa.abs().ln() + &self.exponent)
    }

    pub fn abs(&self) -> ScaledValue {
        ScaledValue::new(Complex::from_real(&self.mantissa.abs()), self.exponent.clone())
    }

    pub fn mul(&self, other: &ScaledValue) -> ScaledValue {
        let bits = self.prec();
        ScaledValue::new(
            &self.mantissa * &other.mantissa,
            Float::with_val(bits, &self.exponent + &other.exponent),
        )
    }

    pub fn mul_complex(&self, z: &Complex) -> ScaledValue {
        ScaledValue::new(&self.mantissa * z, self.exponent.clone())
    }

    /// The value rescaled to `e^exponent`, i.e. `self / e^exponent`.
    pub fn mantissa_at(&self, exponent: &Float) -> Complex {
        let bits = self.prec();
        if self.is_zero() {
            return Complex::zero(bits);
        }
        let shift = Float::with_val(bits, &self.exponent - exponent).exp();
        self.mantissa.scale(&shift)
    }

    pub fn add(&self, other: &ScaledValue) -> ScaledValue {
        let bits = self.prec();
        let e = if self.is_zero() {
            other.exponent.clone()
        } else if other.is_zero() {
            self.exponent.clone()
        } else {
            Float::with_val(bits, self.exponent.max_ref(&other.exponent))
        };
        ScaledValue::new(&self.mantissa_at(&e) + &other.mantissa_at(&e), e)
    }

    pub fn sub(&self, other: &ScaledValue) -> ScaledValue {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScaledValue {
        ScaledValue {
            mantissa: -&self.mantissa,
            exponent: self.exponent.clone(),
        }
    }

    /// The plain complex value; overflows to infinity when out of range.
    pub fn to_complex(&self) -> Complex {
        self.mantissa.scale(&self.exponent.clone().exp())
    }

    /// `|self − other| / max(|self|, |other|)`, computed without leaving the
    /// scaled representation.
    pub fn rel_diff(&self, other: &ScaledValue) -> f64 {
        if self.is_zero() && other.is_zero() {
            return 0.0;
        }
        let diff = self.sub(other);
        if diff.is_zero() {
            return 0.0;
        }
        let scale = self.ln_abs().max(&other.ln_abs());
        let d = Float::with_val(self.prec(), diff.ln_abs() - scale);
        d.exp().to_f64()
    }
}
