//! One-sided (Hestenes) Jacobi singular values of the mantissa matrix.
//!
//! The singular values reported are those of the column-scaled matrix, i.e.
//! of `A_α(μ)` after every column has been divided by `e^{column exponent}`.
//! Scaling columns by nonzero factors does not move the zeros of the
//! smallest singular value.

use rug::Float;

use super::ScaledComplexMatrix;
use crate::error::{Result, SpectraError};
use crate::numeric::Complex;
use crate::scaled::ScaledValue;

const MAX_SWEEPS: usize = 80;

#[derive(Debug, Clone)]
pub struct SingularValues {
    /// Descending order.
    pub values: Vec<Float>,
    pub sweeps: usize,
}

impl SingularValues {
    pub fn largest(&self) -> &Float {
        &self.values[0]
    }

    pub fn smallest(&self) -> &Float {
        self.values.last().expect("nonempty matrix")
    }
}

fn dot(cols: &[Vec<Complex>], p: usize, q: usize, bits: u32) -> Complex {
    // a_p^H a_q
    let mut acc = Complex::zero(bits);
    for (x, y) in cols[p].iter().zip(&cols[q]) {
        acc = &acc + &(&x.conj() * y);
    }
    acc
}

fn norm_sqr(col: &[Complex], bits: u32) -> Float {
    let mut acc = Float::new(bits);
    for x in col {
        acc += x.norm_sqr();
    }
    acc
}

pub fn singular_values(m: &ScaledComplexMatrix) -> Result<SingularValues> {
    let n = m.dim();
    let bits = m.precision_bits();
    let mut cols: Vec<Vec<Complex>> = (0..n)
        .map(|c| (0..n).map(|r| m.mantissa(r, c).clone()).collect())
        .collect();
    let tol = Float::with_val(bits, Float::i_exp(1, -(bits as i32 - 8)));

    let mut sweeps = 0;
    loop {
        if sweeps == MAX_SWEEPS {
            let off = max_off_diagonal(&cols, bits);
            return Err(SpectraError::Numerical {
                message: format!(
                    "Jacobi SVD did not converge in {MAX_SWEEPS} sweeps at mu = {} (largest normalized off-diagonal {off:e})",
                    m.mu().to_f64()
                ),
                bracket: None,
            });
        }
        sweeps += 1;
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let a = norm_sqr(&cols[p], bits);
                let b = norm_sqr(&cols[q], bits);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                let g = dot(&cols, p, q, bits);
                let g_abs = g.abs();
                let bound = Float::with_val(bits, &a * &b).sqrt() * &tol;
                if g_abs <= bound {
                    continue;
                }
                rotated = true;
                // Phase-align column q so that a_p^H a_q is real, then rotate.
                let unit = g.scale(&Float::with_val(bits, g_abs.recip_ref()));
                let unit_conj = unit.conj();
                let zeta = Float::with_val(bits, &b - &a) / (Float::with_val(bits, &g_abs * 2u32));
                let root = (Float::with_val(bits, zeta.square_ref()) + 1u32).sqrt();
                let t = if zeta >= 0 {
                    Float::with_val(bits, &zeta + &root).recip()
                } else {
                    -Float::with_val(bits, &root - &zeta).recip()
                };
                let c = (Float::with_val(bits, t.square_ref()) + 1u32).sqrt().recip();
                let s = Float::with_val(bits, &c * &t);
                for r in 0..n {
                    let xp = cols[p][r].clone();
                    let xq = &cols[q][r] * &unit_conj;
                    cols[p][r] = &xp.scale(&c) - &xq.scale(&s);
                    cols[q][r] = &xp.scale(&s) + &xq.scale(&c);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<Float> = cols.iter().map(|c| norm_sqr(c, bits).sqrt()).collect();
    values.sort_by(|x, y| y.partial_cmp(x).expect("finite singular values"));
    Ok(SingularValues { values, sweeps })
}

fn max_off_diagonal(cols: &[Vec<Complex>], bits: u32) -> f64 {
    let n = cols.len();
    let mut worst = 0.0f64;
    for p in 0..n {
        for q in (p + 1)..n {
            let a = norm_sqr(&cols[p], bits);
            let b = norm_sqr(&cols[q], bits);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let r = dot(cols, p, q, bits).abs() / Float::with_val(bits, &a * &b).sqrt();
            worst = worst.max(r.to_f64());
        }
    }
    worst
}

/// Smallest singular value of the column-scaled matrix (exponent zero).
pub fn smallest_singular_value(m: &ScaledComplexMatrix) -> Result<ScaledValue> {
    let sv = singular_values(m)?;
    Ok(ScaledValue::from_real(sv.smallest()))
}
