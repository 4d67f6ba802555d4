//! Weights in the fundamental-weight basis.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{fmt_rat, parse_rat, rat, to_i64, Rat};

/// Element of `h*_R`, as coefficients of the fundamental weights `ω_i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<Rat>);

impl Weight {
    pub fn new(coords: Vec<Rat>) -> Self {
        Weight(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rat::zero(); rank])
    }

    /// `ω_i`, 1-based.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = rat(1);
        w
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Element of `P`.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// `(x, α_i^∨) ≥ 0` for every simple `i`.
    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(to_i64).collect()
    }

    pub fn scale(&self, t: &Rat) -> Weight {
        Weight(self.0.iter().map(|c| c * t).collect())
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.0.len() == rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: rank,
                got: self.0.len(),
            })
        }
    }

    pub(crate) fn coords_mut(&mut self) -> &mut [Rat] {
        &mut self.0
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for &Rat {
    type Output = Weight;
    fn mul(self, w: &Weight) -> Weight {
        w.scale(self)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(fmt_rat).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Comma-separated exact rationals: `"1,0"`, `"3/2,-1/3"`.
impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',').map(parse_rat).collect::<Result<_>>().map(Weight)
    }
}

/// `ν ∈ h*` split as `re + i·im`; `im` is in units of `2π/|log q|`.
///
/// The encoding does not depend on `q`; `q` only enters when predicates or
/// values are evaluated.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexWeight {
    pub re: Weight,
    pub im: Weight,
}

impl ComplexWeight {
    pub fn new(re: Weight, im: Weight) -> Self {
        ComplexWeight { re, im }
    }

    pub fn real(re: Weight) -> Self {
        let rank = re.rank();
        ComplexWeight {
            re,
            im: Weight::zero(rank),
        }
    }

    pub fn zero(rank: usize) -> Self {
        ComplexWeight::real(Weight::zero(rank))
    }

    pub fn rank(&self) -> usize {
        self.re.rank()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `-ν̄`: flips the real part, keeps the imaginary part.
    pub fn neg_conj(&self) -> Self {
        ComplexWeight::new(-&self.re, self.im.clone())
    }

    pub fn scale(&self, t: &Rat) -> Self {
        ComplexWeight::new(self.re.scale(t), self.im.scale(t))
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        self.re.check_rank(rank)?;
        self.im.check_rank(rank)
    }
}

impl Add for &ComplexWeight {
    type Output = ComplexWeight;
    fn add(self, o: &ComplexWeight) -> ComplexWeight {
        ComplexWeight::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &ComplexWeight {
    type Output = ComplexWeight;
    fn sub(self, o: &ComplexWeight) -> ComplexWeight {
        ComplexWeight::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Neg for &ComplexWeight {
    type Output = ComplexWeight;
    fn neg(self) -> ComplexWeight {
        ComplexWeight::new(-&self.re, -&self.im)
    }
}

impl fmt::Display for ComplexWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::ratio;

    #[test]
    fn text_format() {
        let w: Weight = "3/2,-1/3".parse().unwrap();
        assert_eq!(w.coords(), &[ratio(3, 2), ratio(-1, 3)]);
        assert_eq!(w.to_string(), "3/2,-1/3");
        assert!("".parse::<Weight>().is_err());
        assert!("1,,2".parse::<Weight>().is_err());
    }

    #[test]
    fn arithmetic() {
        let a = Weight::from_ints(&[1, 2]);
        let b = Weight::from_ints(&[3, -1]);
        assert_eq!(&a + &b, Weight::from_ints(&[4, 1]));
        assert_eq!(&a - &b, Weight::from_ints(&[-2, 3]));
        assert!(!(&a - &b).is_dominant());
        assert!(a.is_integral());
        assert!(!Weight::new(vec![ratio(1, 2)]).is_integral());
    }
}
