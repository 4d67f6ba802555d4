//! Exact scalars: rationals, half-integers and complex spectral values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p/q"` and friends.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// `"p/q"`, or `"p"` for integers.
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Value as `i64`, if integral and in range.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// A half-integer, stored as its double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i64);

impl HalfInt {
    pub fn from_doubled(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt(2 * n)
    }

    /// Fails unless `2r` is an integer.
    pub fn from_rat(r: &Rat) -> Result<Self> {
        let twice = r * rat(2);
        to_i64(&twice)
            .map(HalfInt)
            .ok_or_else(|| Error::NotHalfInteger(fmt_rat(r)))
    }

    pub fn doubled(self) -> i64 {
        self.0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    pub fn to_rat(self) -> Rat {
        ratio(self.0, 2)
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// A complex spectral value `re + i·im`.
///
/// For `0 < q < 1` the imaginary coefficient is in units of `2π/|log q|`;
/// at the classical point `q = 1` it is read in plain units.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexScalar {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexScalar {
    pub fn new(re: Rat, im: Rat) -> Self {
        ComplexScalar { re, im }
    }

    pub fn real(re: Rat) -> Self {
        ComplexScalar { re, im: Rat::zero() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexScalar::new(self.re.clone(), -&self.im)
    }

    pub fn scale(&self, t: &Rat) -> Self {
        ComplexScalar::new(&self.re * t, &self.im * t)
    }
}

impl std::ops::Add for &ComplexScalar {
    type Output = ComplexScalar;
    fn add(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl std::ops::Sub for &ComplexScalar {
    type Output = ComplexScalar;
    fn sub(self, o: &ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl std::ops::Neg for &ComplexScalar {
    type Output = ComplexScalar;
    fn neg(self) -> ComplexScalar {
        ComplexScalar::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for ComplexScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", fmt_rat(&self.re), fmt_rat(&-&self.im))
        } else {
            write!(f, "{}+{}i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/2").unwrap(), ratio(3, 2));
        assert_eq!(parse_rat(" -1/3").unwrap(), ratio(-1, 3));
        assert_eq!(parse_rat("4/2").unwrap(), rat(2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(fmt_rat(&ratio(-6, 4)), "-3/2");
        assert_eq!(fmt_rat(&rat(5)), "5");
    }

    #[test]
    fn frac_is_half_open() {
        assert_eq!(frac(&ratio(-1, 3)), ratio(2, 3));
        assert_eq!(frac(&rat(-2)), rat(0));
        assert_eq!(frac(&ratio(7, 2)), ratio(1, 2));
    }

    #[test]
    fn half_ints() {
        let h = HalfInt::from_rat(&ratio(-3, 2)).unwrap();
        assert_eq!(h.doubled(), -3);
        assert_eq!(h.abs().to_string(), "3/2");
        assert!(HalfInt::from_rat(&ratio(1, 3)).is_err());
    }
}
