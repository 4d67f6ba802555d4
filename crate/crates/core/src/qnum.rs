//! q-numbers `(t)_q = (q^t − q^{−t})/(q − q^{−1})` at real and complex
//! arguments, and exact-sign products of them.
//!
//! A complex argument `t = x + i·c` has `c` in units of `2π/|log q|`, so
//! `q^{d t} = q^{d x}·e^{−2πi d c}`. The factor is real exactly when `2dc`
//! is an integer, in which case `(t)_{q^d} = (−1)^{2dc} (x)_{q^d}`. At
//! `q = 1` the argument is read literally and `(t)_1 = t`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::number::{fmt_rat, frac, parse_rat, rat, to_f64, to_i64, ComplexScalar, Rat};

/// The deformation parameter, `0 < q ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QParam(Rat);

impl QParam {
    pub fn new(q: Rat) -> Result<Self> {
        if q.is_positive() && q <= Rat::one() {
            Ok(QParam(q))
        } else {
            Err(Error::InvalidQ(fmt_rat(&q)))
        }
    }

    pub fn classical() -> Self {
        QParam(Rat::one())
    }

    pub fn is_classical(&self) -> bool {
        self.0.is_one()
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn ln(&self) -> f64 {
        to_f64(&self.0).ln()
    }
}

impl FromStr for QParam {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        QParam::new(parse_rat(s).map_err(|_| Error::InvalidQ(s.to_string()))?)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rat(&self.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of(r: &Rat) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Positive => "+",
        })
    }
}

/// A q-number or a product of them.
#[derive(Debug, Clone, PartialEq)]
pub struct QValue {
    pub value: Complex64,
    /// Present whenever the sign is decidable exactly.
    pub exact_sign: Option<Sign>,
    /// Present when the value is a ratio of conjugate factors.
    pub is_unit_modulus: Option<bool>,
    /// The exact value, when it is rational.
    pub exact: Option<Rat>,
}

impl QValue {
    pub fn one() -> Self {
        QValue {
            value: Complex64::new(1.0, 0.0),
            exact_sign: Some(Sign::Positive),
            is_unit_modulus: Some(true),
            exact: Some(Rat::one()),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exact_sign == Some(Sign::Zero)
    }

    /// Exact comparison when both sides are rational, otherwise relative
    /// agreement to `tol`.
    pub fn agrees_with(&self, other: &QValue, tol: f64) -> bool {
        if let (Some(a), Some(b)) = (&self.exact, &other.exact) {
            return a == b;
        }
        if self.exact_sign.is_some()
            && other.exact_sign.is_some()
            && self.exact_sign != other.exact_sign
        {
            return false;
        }
        let scale = self.value.norm().max(other.value.norm());
        (self.value - other.value).norm() <= tol * scale
    }
}

/// One q-number `(x + i c)_{q^d}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QFactor {
    pub d: Rat,
    pub x: Rat,
    pub c: Rat,
}

impl QFactor {
    /// `2dc ∈ Z` (`c = 0` at `q = 1`).
    fn is_real(&self, q: &QParam) -> bool {
        if q.is_classical() {
            self.c.is_zero()
        } else {
            (&self.d * &self.c * rat(2)).is_integer()
        }
    }

    fn real_sign(&self, q: &QParam) -> Sign {
        let s = Sign::of(&self.x);
        if q.is_classical() {
            return s;
        }
        let flips = to_i64(&(&self.d * &self.c * rat(2))).expect("real factor");
        if flips.rem_euclid(2) == 1 {
            s.flip()
        } else {
            s
        }
    }

    fn is_zero(&self, q: &QParam) -> bool {
        self.x.is_zero() && self.is_real(q)
    }

    fn conj(&self) -> QFactor {
        QFactor {
            d: self.d.clone(),
            x: self.x.clone(),
            c: -&self.c,
        }
    }

    /// `ln |value|` and `arg value`; the factor must be nonzero.
    fn log_polar(&self, q: &QParam) -> (f64, f64) {
        if q.is_classical() {
            let z = Complex64::new(to_f64(&self.x), to_f64(&self.c));
            return (z.norm().ln(), z.arg());
        }
        let dl = to_f64(&self.d) * q.ln();
        let a = to_f64(&self.x) * dl;
        // Only dc mod 1 matters for the phase.
        let theta = 2.0 * std::f64::consts::PI * to_f64(&frac(&(&self.d * &self.c)));
        let num = Complex64::new(a, -theta).sinh();
        let den = dl.sinh();
        (num.norm().ln() - den.abs().ln(), num.arg() - if den < 0.0 { std::f64::consts::PI } else { 0.0 })
    }

    /// The rational value when `dx ∈ Z`, `d ∈ Z` and the factor is real.
    fn exact(&self, q: &QParam) -> Option<Rat> {
        if !self.is_real(q) {
            return None;
        }
        if q.is_classical() {
            return Some(self.x.clone());
        }
        let d = to_i64(&self.d)?;
        let n = to_i64(&(&self.d * &self.x))?;
        let qv = q.value();
        let pow = |k: i64| -> Rat {
            if k >= 0 {
                num_traits::pow(qv.clone(), k as usize)
            } else {
                num_traits::pow(qv.recip(), (-k) as usize)
            }
        };
        let v = (pow(n) - pow(-n)) / (pow(d) - pow(-d));
        Some(match self.real_sign(q) == Sign::of(&self.x) {
            true => v,
            false => -v,
        })
    }
}

/// A product `∏ f^e` of q-numbers with integer exponents, kept in canonical
/// form (equal factors merged, zero exponents dropped).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QFactors {
    q: QParam,
    factors: BTreeMap<QFactor, i64>,
}

impl QFactors {
    pub fn new(q: QParam) -> Self {
        QFactors {
            q,
            factors: BTreeMap::new(),
        }
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn factors(&self) -> impl Iterator<Item = (&QFactor, i64)> {
        self.factors.iter().map(|(f, &e)| (f, e))
    }

    /// Multiplies by `(t)_{q^d}^e`. A zero factor with negative exponent is a
    /// pole.
    pub fn push(&mut self, d: &Rat, t: &ComplexScalar, e: i64) -> Result<()> {
        if e == 0 {
            return Ok(());
        }
        let d = if self.q.is_classical() { Rat::one() } else { d.clone() };
        let f = QFactor {
            d,
            x: t.re.clone(),
            c: t.im.clone(),
        };
        if e < 0 && f.is_zero(&self.q) {
            return Err(Error::PoleInDenominator(format!("({t})_q = 0")));
        }
        let slot = self.factors.entry(f.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&f);
        }
        Ok(())
    }

    pub fn extend(&mut self, other: &QFactors, e: i64) -> Result<()> {
        for (f, k) in &other.factors {
            let t = ComplexScalar::new(f.x.clone(), f.c.clone());
            self.push(&f.d, &t, k * e)?;
        }
        Ok(())
    }

    pub fn has_zero(&self) -> bool {
        self.factors.keys().any(|f| f.is_zero(&self.q))
    }

    pub fn exact_sign(&self) -> Option<Sign> {
        if self.has_zero() {
            return Some(Sign::Zero);
        }
        let mut sign = Sign::Positive;
        for (f, &e) in &self.factors {
            if f.is_real(&self.q) {
                if e.rem_euclid(2) == 1 {
                    sign = sign.times(f.real_sign(&self.q));
                }
            } else if self.factors.get(&f.conj()) != Some(&e) {
                return None;
            }
        }
        Some(sign)
    }

    /// True when every non-real factor is divided by its conjugate and the
    /// real factors cancel.
    pub fn is_unit_modulus(&self) -> bool {
        self.factors
            .iter()
            .all(|(f, &e)| !f.is_real(&self.q) && self.factors.get(&f.conj()) == Some(&-e))
    }

    pub fn exact(&self) -> Option<Rat> {
        let mut out = Rat::one();
        for (f, &e) in &self.factors {
            let v = f.exact(&self.q)?;
            if v.is_zero() {
                return Some(Rat::zero());
            }
            let p = num_traits::pow(v.clone(), e.unsigned_abs() as usize);
            out *= if e > 0 { p } else { p.recip() };
        }
        Some(out)
    }

    pub fn value(&self) -> QValue {
        let exact_sign = self.exact_sign();
        let unit = self.is_unit_modulus();
        let exact = self.exact();
        let value = if exact_sign == Some(Sign::Zero) {
            Complex64::new(0.0, 0.0)
        } else {
            let (mut log_abs, mut arg) = (0.0f64, 0.0f64);
            for (f, &e) in &self.factors {
                let (l, a) = f.log_polar(&self.q);
                log_abs += e as f64 * l;
                arg += e as f64 * a;
            }
            match exact_sign {
                Some(s) => {
                    let m = log_abs.exp();
                    Complex64::new(if s == Sign::Negative { -m } else { m }, 0.0)
                }
                None => Complex64::from_polar(log_abs.exp(), arg),
            }
        };
        QValue {
            value,
            exact_sign,
            is_unit_modulus: unit.then_some(true),
            exact,
        }
    }
}

/// `(t)_q`.
pub fn qnum(q: &QParam, t: &ComplexScalar) -> QValue {
    qnum_base(q, &Rat::one(), t)
}

/// `(t)_{q^d}`.
pub fn qnum_base(q: &QParam, d: &Rat, t: &ComplexScalar) -> QValue {
    let mut p = QFactors::new(q.clone());
    p.push(d, t, 1).expect("positive exponent never fails");
    if t.is_zero() || (p.factors.is_empty()) {
        return QValue {
            value: Complex64::new(0.0, 0.0),
            exact_sign: Some(Sign::Zero),
            is_unit_modulus: None,
            exact: Some(Rat::zero()),
        };
    }
    let mut v = p.value();
    v.is_unit_modulus = None;
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::ratio;

    fn q(n: i64, d: i64) -> QParam {
        QParam::new(ratio(n, d)).unwrap()
    }

    fn real(x: Rat) -> ComplexScalar {
        ComplexScalar::real(x)
    }

    #[test]
    fn parameter_range() {
        assert!(QParam::new(rat(0)).is_err());
        assert!(QParam::new(ratio(3, 2)).is_err());
        assert!(QParam::new(rat(1)).unwrap().is_classical());
        assert_eq!("7/10".parse::<QParam>().unwrap(), q(7, 10));
        assert!("x".parse::<QParam>().is_err());
    }

    #[test]
    fn examples() {
        assert!(qnum(&q(1, 2), &real(rat(0))).is_zero());
        let two = qnum(&q(1, 2), &real(rat(2)));
        assert_eq!(two.exact, Some(ratio(5, 2)));
        assert!((two.value.re - 2.5).abs() < 1e-12);
        let c = qnum(&QParam::classical(), &real(ratio(7, 3)));
        assert_eq!(c.exact, Some(ratio(7, 3)));
        assert_eq!(c.exact_sign, Some(Sign::Positive));
    }

    #[test]
    fn integer_q_numbers_are_laurent_polynomials() {
        // (3)_q = q^2 + 1 + q^{-2}.
        let v = qnum(&q(1, 3), &real(rat(3)));
        assert_eq!(v.exact, Some(ratio(1, 9) + rat(1) + rat(9)));
        let v = qnum_base(&q(1, 2), &rat(2), &real(rat(2)));
        // (2)_{q^2} = q^2 + q^{-2}.
        assert_eq!(v.exact, Some(ratio(17, 4)));
    }

    #[test]
    fn sign_matches_argument() {
        for qq in [q(1, 10), q(1, 2), q(9, 10), QParam::classical()] {
            for k in -30..=30 {
                let t = ratio(k, 7);
                let v = qnum(&qq, &real(t.clone()));
                assert_eq!(v.exact_sign, Some(Sign::of(&t)));
                assert_eq!(v.value.re.partial_cmp(&0.0).unwrap(), t.cmp(&rat(0)));
            }
        }
    }

    #[test]
    fn half_period_shift_flips_sign() {
        let qq = q(1, 2);
        let a = qnum(&qq, &real(ratio(3, 2)));
        let b = qnum(&qq, &ComplexScalar::new(ratio(3, 2), ratio(1, 2)));
        assert_eq!(b.exact_sign, Some(Sign::Negative));
        assert!((a.value + b.value).norm() < 1e-12);
        let c = qnum(&qq, &ComplexScalar::new(ratio(3, 2), rat(1)));
        assert!((a.value - c.value).norm() < 1e-12);
        // Pure half period is a zero: q^{iπ/log q} = −1.
        assert!(qnum(&qq, &ComplexScalar::new(rat(0), ratio(1, 2))).is_zero());
    }

    #[test]
    fn classical_limit() {
        let t = real(ratio(5, 3));
        let a = qnum(&QParam::new(ratio(99, 100)).unwrap(), &t).value.re;
        let b = qnum(&QParam::new(ratio(9999, 10000)).unwrap(), &t).value.re;
        assert!((b - 5.0 / 3.0).abs() < (a - 5.0 / 3.0).abs());
        assert!((b - 5.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn numeric_complex_value() {
        let qq = q(1, 2);
        let t = ComplexScalar::new(ratio(1, 3), ratio(1, 5));
        let v = qnum(&qq, &t);
        assert_eq!(v.exact_sign, None);
        let l = (0.5f64).ln();
        let arg = Complex64::new(l / 3.0, 2.0 * std::f64::consts::PI / 5.0 * l / l.abs());
        let expect = (arg.exp() - (-arg).exp()) / (0.5 - 2.0);
        assert!((v.value - expect).norm() < 1e-12);
    }

    #[test]
    fn products_cancel_and_pair() {
        let qq = q(3, 10);
        let one = rat(1);
        let t = ComplexScalar::new(ratio(2, 3), ratio(1, 7));
        let mut p = QFactors::new(qq.clone());
        p.push(&one, &t, 1).unwrap();
        p.push(&one, &t.conj(), -1).unwrap();
        assert!(p.is_unit_modulus());
        assert!((p.value().value.norm() - 1.0).abs() < 1e-12);
        p.push(&one, &t.conj(), 2).unwrap();
        assert_eq!(p.exact_sign(), Some(Sign::Positive));
        p.push(&one, &t, -1).unwrap();
        p.push(&one, &t.conj(), -1).unwrap();
        assert_eq!(p, QFactors::new(qq.clone()));
        assert!(p.push(&one, &real(rat(0)), -1).is_err());
    }
}
