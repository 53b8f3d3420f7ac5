//! Scalar fields used by every tensor in the crate.
//!
//! All structural quantities are polynomial in the structure constants, so the
//! default field is the exact rationals. A binary64 mode exists for external
//! data that is not given as rational literals; in that mode zero tests go
//! through a [`Tolerance`].

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary precision rational number, always kept in lowest terms.
pub type Rational = BigRational;

/// A field element usable as a tensor entry.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Signed + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and zero tests are literal.
    const EXACT: bool;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    fn from_rational(value: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    fn from_int(value: i64) -> Self {
        Self::from_ratio(value, 1)
    }

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn twice(&self) -> Self {
        self.clone() + self.clone()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        Rational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn from_rational(value: &Rational) -> Self {
        value.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_ratio(numer: i64, denom: i64) -> Self {
        numer as f64 / denom as f64
    }

    fn from_rational(value: &Rational) -> Self {
        ToPrimitive::to_f64(value).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Largest absolute value in a collection of scalars, zero when empty.
pub fn max_abs<'a, T: Scalar>(values: impl IntoIterator<Item = &'a T>) -> T {
    values.into_iter().fold(T::zero(), |acc, v| {
        let a = v.abs();
        if a > acc {
            a
        } else {
            acc
        }
    })
}

/// Zero test policy. Exact scalars ignore the epsilon entirely.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance(f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

#[derive(Debug, Error, PartialEq)]
#[error("tolerance must be finite and non-negative, got {0}")]
pub struct InvalidTolerance(pub f64);

impl Tolerance {
    pub fn new(epsilon: f64) -> Result<Self, InvalidTolerance> {
        if epsilon.is_finite() && epsilon >= 0.0 {
            Ok(Tolerance(epsilon))
        } else {
            Err(InvalidTolerance(epsilon))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.0
    }

    pub fn is_zero<T: Scalar>(&self, x: &T) -> bool {
        if T::EXACT {
            x.is_zero()
        } else {
            x.to_f64().abs() <= self.0
        }
    }

    /// Scale-aware zero test: `|x| <= eps * (1 + |scale|)` in float mode.
    pub fn is_zero_relative<T: Scalar>(&self, x: &T, scale: &T) -> bool {
        if T::EXACT {
            x.is_zero()
        } else {
            x.to_f64().abs() <= self.0 * (1.0 + scale.to_f64().abs())
        }
    }

    pub fn eq<T: Scalar>(&self, a: &T, b: &T) -> bool {
        self.is_zero(&(a.clone() - b.clone()))
    }

    pub fn is_positive<T: Scalar>(&self, x: &T) -> bool {
        x.is_positive() && !self.is_zero(x)
    }

    pub fn is_negative<T: Scalar>(&self, x: &T) -> bool {
        x.is_negative() && !self.is_zero(x)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseScalarError {
    #[error("empty numeric literal")]
    Empty,
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("malformed numeric literal `{0}`")]
    Malformed(String),
}

/// Parses `p/q`, an integer, or a finite decimal such as `-1.25` or `3e-2`
/// into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational, ParseScalarError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseScalarError::Empty);
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num.trim()).ok_or_else(|| ParseScalarError::Malformed(s.into()))?;
        let den = parse_integer(den.trim()).ok_or_else(|| ParseScalarError::Malformed(s.into()))?;
        if den.is_zero() {
            return Err(ParseScalarError::ZeroDenominator(s.into()));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s).ok_or_else(|| ParseScalarError::Malformed(s.into()))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s.strip_prefix('+').unwrap_or(s)).ok()
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (negative, unsigned) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&digits).ok()?);
    let shift = exponent - i32::try_from(frac_part.len()).ok()?;
    let ten = Rational::from_integer(BigInt::from(10));
    if shift >= 0 {
        value *= num_traits::pow(ten, shift as usize);
    } else {
        value /= num_traits::pow(ten, shift.unsigned_abs() as usize);
    }
    Some(if negative { -value } else { value })
}

/// Exact conversion of a finite binary64 value.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_ratio(n, d)
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("29/8").unwrap(), q(29, 8));
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("4/-6").unwrap(), q(-2, 3));
        assert_eq!(parse_rational("17").unwrap(), q(17, 1));
        assert_eq!(parse_rational("+3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("3e-2").unwrap(), q(3, 100));
        assert_eq!(parse_rational("2.5E2").unwrap(), q(250, 1));
    }

    #[test]
    fn rejects_bad_literals() {
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseScalarError::ZeroDenominator("1/0".into()))
        );
        assert_eq!(parse_rational("  "), Err(ParseScalarError::Empty));
        for bad in ["abc", "1/2/3", "1.2.3", "--1", "e5", "1/", "0x10", "1e"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn rational_display_is_lowest_terms() {
        assert_eq!(q(6, -4).to_string(), "-3/2");
        assert_eq!(q(8, 4).to_string(), "2");
    }

    #[test]
    fn tolerance_is_ignored_in_exact_mode() {
        let tol = Tolerance::new(1.0).unwrap();
        assert!(!tol.is_zero(&q(1, 1_000_000)));
        assert!(tol.is_zero(&0.5f64));
        assert!(Tolerance::default().is_zero_relative(&1e-6f64, &1e4));
        assert!(!Tolerance::default().is_zero_relative(&1e-6f64, &1.0));
        assert!(Tolerance::new(-1.0).is_err());
        assert!(Tolerance::new(f64::NAN).is_err());
    }

    #[test]
    fn max_abs_picks_magnitude() {
        let v = [q(1, 2), q(-3, 1), q(2, 1)];
        assert_eq!(max_abs(&v), q(3, 1));
        assert_eq!(max_abs::<Rational>(&[]), q(0, 1));
    }
}
