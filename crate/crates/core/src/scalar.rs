//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds the rational `n / d`. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p"`, `"p/q"` (also tolerates a leading unicode minus sign).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    if cleaned.is_empty() {
        return Err(Error::Parse(format!("empty rational string {s:?}")));
    }
    Rational::from_str(&cleaned).map_err(|_| Error::Parse(format!("malformed rational {s:?}")))
}

/// Canonical string form: `"-1"`, `"2"`, `"1/2"`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Lossy conversion for the floating-point search stage.
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // Fall back for huge numerators/denominators.
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Exact scalar field used by matrices and Lie algebra elements.
///
/// Implemented for [`Rational`] (real scalars) and [`GaussianRational`]
/// (scalars of the complexification).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + From<Rational>
{
    /// Scales by a real rational without promoting it first.
    fn scale(&self, q: &Rational) -> Self;
}

impl Field for Rational {
    fn scale(&self, q: &Rational) -> Self {
        self * q
    }
}

/// Element of the Gaussian rationals ℚ(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    /// `im · i`.
    pub fn imaginary(im: Rational) -> Self {
        Self::new(Rational::zero(), im)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// Squared modulus `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    /// Parses the forms produced by `Display`: `"a"`, `"bi"`, `"a+bi"`,
    /// `"a-bi"`, `"i"`, `"-i"`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.trim().replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("malformed Gaussian rational {s:?}"));
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(Self::from(parse_rational(&t)?));
        };
        // Split at the last sign that is not the leading one.
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        let (re_part, im_part) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Self::new(parse_rational(re_part)?, im))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_str = |q: &Rational| -> String {
            if q.abs().is_one() {
                String::new()
            } else {
                format_rational(&q.abs())
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", format_rational(&self.re)),
            (true, false) => {
                let sign = if self.im.is_negative() { "-" } else { "" };
                write!(f, "{sign}{}i", im_str(&self.im))
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{}{sign}{}i", format_rational(&self.re), im_str(&self.im))
            }
        }
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        Self::new(re, Rational::zero())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from(int(n))
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self::new(Rational::one(), Rational::zero())
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        Self::new(re, im)
    }
}

impl Div for GaussianRational {
    type Output = Self;
    /// Panics on division by zero, like `Rational`.
    fn div(self, rhs: Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let num = self * rhs.conj();
        Self::new(num.re / &n, num.im / n)
    }
}

impl Field for GaussianRational {
    fn scale(&self, q: &Rational) -> Self {
        Self::new(&self.re * q, &self.im * q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(int(re), int(im))
    }

    #[test]
    fn rational_strings() {
        assert_eq!(format_rational(&rat(-2, 4)), "-1/2");
        assert_eq!(format_rational(&int(3)), "3");
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("\u{2212}1").unwrap(), int(-1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("one").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn gaussian_display_and_parse() {
        let cases = [
            (g(0, 0), "0"),
            (g(2, 0), "2"),
            (g(0, 1), "i"),
            (g(0, -1), "-i"),
            (g(1, -1), "1-i"),
            (g(-3, 2), "-3+2i"),
            (GaussianRational::new(rat(1, 2), rat(-3, 4)), "1/2-3/4i"),
        ];
        for (z, s) in cases {
            assert_eq!(z.to_string(), s);
            assert_eq!(GaussianRational::parse(s).unwrap(), z);
        }
        assert!(GaussianRational::parse("1+").is_err());
    }

    #[test]
    fn gaussian_field_ops() {
        let a = g(1, 2);
        let b = g(3, -1);
        assert_eq!(a.clone() * b.clone(), g(5, 5));
        assert_eq!((a.clone() * b.clone()) / b.clone(), a);
        assert_eq!(GaussianRational::i() * GaussianRational::i(), g(-1, 0));
        assert_eq!(a.conj().conj(), a);
        assert_eq!(a.norm_sqr(), int(5));
    }
}
