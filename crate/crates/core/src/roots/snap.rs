//! Rational reconstruction of floating-point values by continued fractions.

use num_bigint::BigInt;

use crate::scalar::{GaussianRational, Rational};

/// Denominator bound used when none is requested explicitly.
pub const DEFAULT_MAX_DENOMINATOR: u64 = 1_000_000;

// A convergent p/q is only trusted when the continued fraction "jumps" after
// it, i.e. |x - p/q| * q^2 is below this. Accidental approximations of
// irrationals sit near 1/sqrt(5) instead.
const JUMP_THRESHOLD: f64 = 1e-2;

/// Finds the first continued-fraction convergent `p/q` of `x` with
/// `q <= max_denominator` and `|x - p/q| <= tol·max(1, |x|)`.
pub fn snap_rational(x: f64, tol: f64, max_denominator: u64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let bound = tol * x.abs().max(1.0);
    if x.abs() <= bound {
        return Some(Rational::from_integer(0.into()));
    }
    let (mut h_prev, mut h) = (1_i128, x.floor() as i128);
    let (mut k_prev, mut k) = (0_i128, 1_i128);
    let mut rem = x - x.floor();
    loop {
        let err = (x - h as f64 / k as f64).abs();
        let q2 = (k as f64) * (k as f64);
        if err <= bound && err * q2 <= JUMP_THRESHOLD {
            return Some(Rational::new(BigInt::from(h), BigInt::from(k)));
        }
        if rem.abs() < f64::EPSILON {
            return None;
        }
        let inv = 1.0 / rem;
        let a = inv.floor();
        if a > 1e15 {
            return None;
        }
        rem = inv - a;
        let a = a as i128;
        let h_next = a.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a.checked_mul(k)?.checked_add(k_prev)?;
        if k_next as u128 > max_denominator as u128 {
            return None;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
    }
}

/// Snaps real and imaginary parts independently.
pub fn snap_gaussian(re: f64, im: f64, tol: f64, max_denominator: u64) -> Option<GaussianRational> {
    Some(GaussianRational::new(
        snap_rational(re, tol, max_denominator)?,
        snap_rational(im, tol, max_denominator)?,
    ))
}
