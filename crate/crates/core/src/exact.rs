//! Exact number systems: arbitrary-precision rationals and the quadratic
//! field Q(sqrt 2).
//!
//! Every coordinate in the ball model and every layout position is carried
//! in one of these two types, so all comparisons below are exact.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an exact number")]
    Parse(String),
}

/// A rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_int(n: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Rat, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn signum(&self) -> i32 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Rat, ExactError> {
        if self.is_zero() {
            Err(ExactError::DivisionByZero)
        } else {
            Ok(Rat(self.0.recip()))
        }
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat, ExactError> {
        if other.is_zero() {
            Err(ExactError::DivisionByZero)
        } else {
            Ok(Rat(&self.0 / &other.0))
        }
    }

    pub fn square(&self) -> Rat {
        Rat(&self.0 * &self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Rat {
        Rat::from_int(n)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Rat, ExactError> {
        let t = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        match t.split_once('/') {
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(n)))
            }
            Some((p, q)) => {
                let n: BigInt = p.trim().parse().map_err(|_| bad())?;
                let d: BigInt = q.trim().parse().map_err(|_| bad())?;
                Rat::from_big(n, d)
            }
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$m(&rhs.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat(self.0.$m(rhs.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                Rat(self.0.$m(&rhs.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                Rat((&self.0).$m(rhs.0))
            }
        }
    };
}

rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on a zero divisor; use [`Rat::checked_div`] when that can happen.
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        &self / &rhs
    }
}

impl Div<&Rat> for Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        &self / rhs
    }
}

impl Div<Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        self / &rhs
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

/// A real number `a + b*sqrt(2)` with rational `a`, `b`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QS2 {
    pub a: Rat,
    pub b: Rat,
}

impl QS2 {
    pub fn new(a: Rat, b: Rat) -> QS2 {
        QS2 { a, b }
    }

    pub fn rational(a: Rat) -> QS2 {
        QS2 { a, b: Rat::zero() }
    }

    pub fn from_ints(a: i64, b: i64) -> QS2 {
        QS2 { a: Rat::from_int(a), b: Rat::from_int(b) }
    }

    pub fn sqrt2() -> QS2 {
        QS2::from_ints(0, 1)
    }

    pub fn zero() -> QS2 {
        QS2::default()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Conjugate `a - b*sqrt2`.
    pub fn conj(&self) -> QS2 {
        QS2 { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a^2 - 2 b^2`; zero only for zero.
    pub fn norm(&self) -> Rat {
        self.a.square() - Rat::from_int(2) * self.b.square()
    }

    /// Exact sign of `a + b*sqrt2`.
    pub fn sign(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // mixed signs: the larger magnitude of a^2 vs 2 b^2 wins
        match self.a.square().cmp(&(Rat::from_int(2) * self.b.square())) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn checked_div(&self, rhs: &QS2) -> Result<QS2, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let n = rhs.norm();
        let num = self * &rhs.conj();
        Ok(QS2 { a: &num.a / &n, b: &num.b / &n })
    }

    pub fn recip(&self) -> Result<QS2, ExactError> {
        QS2::from_ints(1, 0).checked_div(self)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * std::f64::consts::SQRT_2
    }
}

/// The four field operations on [`QS2`]; `Div` fails on a zero divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn qs2_arith(x: &QS2, y: &QS2, op: ArithOp) -> Result<QS2, ExactError> {
    match op {
        ArithOp::Add => Ok(x + y),
        ArithOp::Sub => Ok(x - y),
        ArithOp::Mul => Ok(x * y),
        ArithOp::Div => x.checked_div(y),
    }
}

pub fn qs2_sign(x: &QS2) -> i32 {
    x.sign()
}

impl PartialOrd for QS2 {
    fn partial_cmp(&self, other: &QS2) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QS2 {
    fn cmp(&self, other: &QS2) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl Add<&QS2> for &QS2 {
    type Output = QS2;
    fn add(self, rhs: &QS2) -> QS2 {
        QS2 { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
}

impl Sub<&QS2> for &QS2 {
    type Output = QS2;
    fn sub(self, rhs: &QS2) -> QS2 {
        QS2 { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
}

impl Mul<&QS2> for &QS2 {
    type Output = QS2;
    fn mul(self, rhs: &QS2) -> QS2 {
        let two = Rat::from_int(2);
        QS2 { a: &self.a * &rhs.a + two * (&self.b * &rhs.b), b: &self.a * &rhs.b + &self.b * &rhs.a }
    }
}

impl Add for QS2 {
    type Output = QS2;
    fn add(self, rhs: QS2) -> QS2 {
        &self + &rhs
    }
}

impl Sub for QS2 {
    type Output = QS2;
    fn sub(self, rhs: QS2) -> QS2 {
        &self - &rhs
    }
}

impl Mul for QS2 {
    type Output = QS2;
    fn mul(self, rhs: QS2) -> QS2 {
        &self * &rhs
    }
}

impl Neg for QS2 {
    type Output = QS2;
    fn neg(self) -> QS2 {
        QS2 { a: -self.a, b: -self.b }
    }
}

impl Neg for &QS2 {
    type Output = QS2;
    fn neg(self) -> QS2 {
        QS2 { a: -&self.a, b: -&self.b }
    }
}

impl fmt::Display for QS2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt2", self.a, self.b)
        }
    }
}

impl fmt::Debug for QS2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QS2 {
    type Err = ExactError;

    /// Accepts `"p/q"`, `"p/q + r/s*sqrt2"` and `"r/s*sqrt2"`.
    fn from_str(s: &str) -> Result<QS2, ExactError> {
        let t = s.trim();
        let bad = || ExactError::Parse(s.to_string());
        let parse_b = |part: &str| -> Result<Rat, ExactError> {
            let coeff = part.trim().strip_suffix("sqrt2").ok_or_else(bad)?.trim_end();
            let coeff = coeff.strip_suffix('*').ok_or_else(bad)?;
            coeff.parse()
        };
        if !t.ends_with("sqrt2") {
            return Ok(QS2::rational(t.parse()?));
        }
        match t.split_once(" + ") {
            Some((a, b)) => Ok(QS2 { a: a.parse()?, b: parse_b(b)? }),
            None => Ok(QS2 { a: Rat::zero(), b: parse_b(t)? }),
        }
    }
}

/// Serialized as the pair `[a, b]` of rational strings.
impl Serialize for QS2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (&self.a, &self.b).serialize(s)
    }
}

impl<'de> Deserialize<'de> for QS2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<QS2, D::Error> {
        let (a, b) = <(Rat, Rat)>::deserialize(d)?;
        Ok(QS2 { a, b })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> QS2 {
        QS2::from_ints(a, b)
    }

    #[test]
    fn conjugate_product_is_one() {
        assert_eq!(qs2_arith(&q(1, 1), &q(-1, 1), ArithOp::Mul).unwrap(), q(1, 0));
    }

    #[test]
    fn rationalized_inverse_of_sqrt2() {
        let inv = q(0, 1).recip().unwrap();
        assert_eq!(inv, QS2::new(Rat::zero(), Rat::new(1, 2)));
    }

    #[test]
    fn sum_cancels_rational_part() {
        assert_eq!(qs2_arith(&q(1, 1), &q(-1, 1), ArithOp::Add).unwrap(), q(0, 2));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(qs2_arith(&q(1, 1), &QS2::zero(), ArithOp::Div), Err(ExactError::DivisionByZero));
        assert!(Rat::one().recip().is_ok());
        assert!(Rat::zero().recip().is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(qs2_sign(&q(1, -1)), -1);
        assert_eq!(qs2_sign(&QS2::zero()), 0);
        // 9 > 8
        assert_eq!(qs2_sign(&q(3, -2)), 1);
        assert_eq!(qs2_sign(&q(-3, 2)), -1);
        assert_eq!(qs2_sign(&q(0, -5)), -1);
    }

    #[test]
    fn rat_is_reduced() {
        let r = Rat::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("4/2".parse::<Rat>().unwrap(), Rat::from_int(2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("x".parse::<Rat>().is_err());
    }

    #[test]
    fn text_forms() {
        let x = QS2::new(Rat::new(1, 2), Rat::new(-3, 7));
        assert_eq!(x.to_string(), "1/2 + -3/7*sqrt2");
        assert_eq!(x.to_string().parse::<QS2>().unwrap(), x);
        assert_eq!("0 + 1*sqrt2".parse::<QS2>().unwrap(), q(0, 1));
        assert_eq!("2*sqrt2".parse::<QS2>().unwrap(), q(0, 2));
        assert_eq!("5".parse::<QS2>().unwrap(), q(5, 0));
        assert!("1 + sqrt2".parse::<QS2>().is_err());
    }

    #[test]
    fn json_pair_form() {
        let x = QS2::new(Rat::new(-1, 2), Rat::from_int(3));
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"["-1/2","3"]"#);
        assert_eq!(serde_json::from_str::<QS2>(&s).unwrap(), x);
    }
}
