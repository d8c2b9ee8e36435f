use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always canonical: denominator positive, numerator and denominator coprime.
/// Displays and serializes as `"num/den"` (the slash is kept even for
/// integers, so `6` renders as `"6/1"`); parsing accepts both `"6"` and
/// `"6/1"`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den` in canonical form.
    ///
    /// Panics if `den == 0`; use [`Rat::checked_div`] for fallible division.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The integer `n` as a rational.
    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Largest integer `<= self`.
    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Smallest integer `>= self`.
    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    /// The value as `i64` when it is an integer that fits; `None` otherwise.
    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.numer().to_i64()
        } else {
            None
        }
    }

    /// Exact division; division by zero is an error rather than a panic.
    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Rat(&self.0 / &rhs.0))
    }

    pub fn square(&self) -> Rat {
        Rat(&self.0 * &self.0)
    }

    /// Decimal rendering with `digits` places, truncated toward minus
    /// infinity. Display-only; never used in comparisons.
    pub fn decimal_string(&self, digits: u32) -> String {
        decimal_of_scaled(self.scaled_floor(digits), digits)
    }

    /// floor(self * 10^digits), the integer behind `decimal_string`.
    pub(crate) fn scaled_floor(&self, digits: u32) -> BigInt {
        let scale = BigInt::from(10u32).pow(digits);
        Rat(&self.0 * BigRational::from_integer(scale)).floor()
    }
}

/// Renders `scaled / 10^digits` with a decimal point, sign-aware.
pub(crate) fn decimal_of_scaled(scaled: BigInt, digits: u32) -> String {
    if digits == 0 {
        return scaled.to_string();
    }
    let negative = scaled.is_negative();
    let mut s = scaled.magnitude().to_string();
    let digits = digits as usize;
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits - s.len() + 1), s);
    }
    s.insert(s.len() - digits, '.');
    if negative {
        s.insert(0, '-');
    }
    s
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rat({self})")
    }
}

impl FromStr for Rat {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::ParseRational(s.to_owned());
        match s.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(bad());
                }
                Ok(Rat(BigRational::new(num, den)))
            }
            None => {
                let num = BigInt::from_str(s.trim()).map_err(|_| bad())?;
                Ok(Rat(BigRational::from_integer(num)))
            }
        }
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

impl From<u64> for Rat {
    fn from(n: u64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat(BigRational::from_integer(n))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                Rat(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &Rat) -> Rat {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rat> for &Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

/// Panics on division by zero, mirroring integer division; fallible callers
/// use [`Rat::checked_div`].
impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
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

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}
