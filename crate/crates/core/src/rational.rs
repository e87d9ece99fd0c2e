//! Exact rational and rational-complex scalars.
//!
//! Every comparison in the classification pipeline is decided over these
//! types; no floating point appears anywhere. In particular whether a point
//! sits on the unit circle is the exact test `re^2 + im^2 = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

/// Parse a rational from `p/q`, an integer string, or a plain decimal such as
/// `-0.25`. All three forms are exact.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError(s.to_string()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| ParseRationalError(s.to_string()))?;
        let d = BigInt::from_str(den.trim()).map_err(|_| ParseRationalError(s.to_string()))?;
        if d.is_zero() {
            return Err(ParseRationalError(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(int_part).map_err(|_| ParseRationalError(s.to_string()))?
        };
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError(s.to_string()));
        }
        let digits = BigInt::from_str(frac_part).map_err(|_| ParseRationalError(s.to_string()))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rational::new(digits, scale);
        let whole = Rational::from_integer(int_part);
        return Ok(if negative { whole - frac } else { whole + frac });
    }
    let n = BigInt::from_str(s).map_err(|_| ParseRationalError(s.to_string()))?;
    Ok(Rational::from_integer(n))
}

/// Render reduced: integers without a denominator, otherwise `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError(pub String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {:?}", self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// A Gaussian rational `re + im*i` with exact arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalComplex {
    pub re: Rational,
    pub im: Rational,
}

impl RationalComplex {
    pub fn new(re: Rational, im: Rational) -> Self {
        RationalComplex { re, im }
    }

    pub fn zero() -> Self {
        RationalComplex { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> Self {
        RationalComplex { re: Rational::one(), im: Rational::zero() }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        RationalComplex {
            re: Rational::from_integer(BigInt::from(re)),
            im: Rational::from_integer(BigInt::from(im)),
        }
    }

    /// `p/q + r/s*i` from four machine integers, for tests and fixtures.
    pub fn from_ratio(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        RationalComplex {
            re: Rational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: Rational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        RationalComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2 = re^2 + im^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Exact position of `|z|` relative to 1.
    pub fn modulus_vs_one(&self) -> Ordering {
        self.norm_sqr().cmp(&Rational::one())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        let n = self.norm_sqr();
        if n.is_zero() {
            return None;
        }
        Some(RationalComplex { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|inv| self * &inv)
    }

    /// Parse `re,im` where each component is a rational literal.
    pub fn parse_pair(s: &str) -> Result<Self, ParseRationalError> {
        let (re, im) = s.split_once(',').ok_or_else(|| ParseRationalError(s.to_string()))?;
        Ok(RationalComplex::new(parse_rational(re)?, parse_rational(im)?))
    }
}

impl fmt::Display for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", format_rational(&self.re))
        } else if self.im.is_negative() {
            write!(f, "{}{}i", format_rational(&self.re), format_rational(&self.im))
        } else {
            write!(f, "{}+{}i", format_rational(&self.re), format_rational(&self.im))
        }
    }
}

impl fmt::Debug for RationalComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Add for &RationalComplex {
    type Output = RationalComplex;
    fn add(self, rhs: &RationalComplex) -> RationalComplex {
        RationalComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &RationalComplex {
    type Output = RationalComplex;
    fn sub(self, rhs: &RationalComplex) -> RationalComplex {
        RationalComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &RationalComplex {
    type Output = RationalComplex;
    fn mul(self, rhs: &RationalComplex) -> RationalComplex {
        RationalComplex {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &RationalComplex {
    type Output = RationalComplex;
    fn neg(self) -> RationalComplex {
        RationalComplex { re: -self.re.clone(), im: -self.im.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn parsing_forms() {
        assert_eq!(q("3/5"), Rational::new(BigInt::from(3), BigInt::from(5)));
        assert_eq!(q("-0.25"), Rational::new(BigInt::from(-1), BigInt::from(4)));
        assert_eq!(q("0.5"), q("1/2"));
        assert_eq!(q("2"), q("4/2"));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn formatting_reduced() {
        assert_eq!(format_rational(&q("4/2")), "2");
        assert_eq!(format_rational(&q("-3/6")), "-1/2");
    }

    #[test]
    fn unit_circle_is_exact() {
        let z = RationalComplex::from_ratio(3, 5, 4, 5);
        assert_eq!(z.modulus_vs_one(), Ordering::Equal);
        let w = RationalComplex::from_ratio(3, 5, 4, 6);
        assert_eq!(w.modulus_vs_one(), Ordering::Less);
        assert_eq!(RationalComplex::from_integers(2, 0).modulus_vs_one(), Ordering::Greater);
    }

    #[test]
    fn field_ops() {
        let z = RationalComplex::from_ratio(1, 2, -1, 3);
        let inv = z.inv().unwrap();
        assert!((&z * &inv).is_one());
        assert!(RationalComplex::zero().inv().is_none());
        let conj_twice = z.conj().conj();
        assert_eq!(conj_twice, z);
    }

    #[test]
    fn pair_parsing() {
        let z = RationalComplex::parse_pair("3/5,4/5").unwrap();
        assert_eq!(z, RationalComplex::from_ratio(3, 5, 4, 5));
        let zero = RationalComplex::parse_pair("0/1,0/1").unwrap();
        assert!(zero.is_zero());
    }
}
