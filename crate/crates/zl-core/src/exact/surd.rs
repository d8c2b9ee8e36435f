use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::rational::decimal_of_scaled;
use super::{ExactError, Rat};

/// Exact value of the form `l + sqrt(s)` with rational `l` and rational
/// `s >= 0`. `s == 0` makes the value purely rational.
///
/// The representation is never normalized: a perfect-square radicand is kept
/// as written, so `7/4 + sqrt(289/16)` and `6 + sqrt(0)` stay distinct as
/// representations while comparing `Equal`. Because equal values can have
/// distinct representations, `Hash` is deliberately not implemented.
///
/// Comparisons are exact; no floating point is involved anywhere.
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "SurdRepr", into = "SurdRepr")]
pub struct Surd {
    l: Rat,
    s: Rat,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename = "Surd")]
struct SurdRepr {
    l: Rat,
    s: Rat,
}

impl TryFrom<SurdRepr> for Surd {
    type Error = ExactError;
    fn try_from(r: SurdRepr) -> Result<Self, Self::Error> {
        Surd::new(r.l, r.s)
    }
}

impl From<Surd> for SurdRepr {
    fn from(x: Surd) -> Self {
        SurdRepr { l: x.l, s: x.s }
    }
}

impl Surd {
    /// Builds `l + sqrt(s)`; `s < 0` is rejected.
    pub fn new(l: Rat, s: Rat) -> Result<Self, ExactError> {
        if s.is_negative() {
            return Err(ExactError::NegativeRadicand(s));
        }
        Ok(Surd { l, s })
    }

    /// The rational `r`, represented as `r + sqrt(0)`.
    pub fn rational(r: Rat) -> Self {
        Surd { l: r, s: Rat::zero() }
    }

    pub fn linear_part(&self) -> &Rat {
        &self.l
    }

    pub fn radicand(&self) -> &Rat {
        &self.s
    }

    pub fn is_rational_form(&self) -> bool {
        self.s.is_zero()
    }

    /// Largest integer `<= l + sqrt(s)`.
    ///
    /// Seeds with `floor(l) + isqrt(floor(s))`, an integer provably below the
    /// value, then corrects upward; the seed lags the true floor by at most
    /// one step.
    pub fn floor(&self) -> BigInt {
        let seed = self.s.floor().sqrt();
        let mut k = self.l.floor() + seed;
        let mut bumps = 0u8;
        while self.is_at_least(&(&k + 1)) {
            k += 1;
            bumps += 1;
            assert!(bumps <= 2, "floor seed out of range");
        }
        k
    }

    /// Whether `k <= l + sqrt(s)`, exactly.
    fn is_at_least(&self, k: &BigInt) -> bool {
        let d = Rat::from(k.clone()) - &self.l;
        !d.is_positive() || d.square() <= self.s
    }

    /// Whether the value is an integer (regardless of representation).
    pub fn is_integer(&self) -> bool {
        let d = Rat::from(self.floor()) - &self.l;
        !d.is_negative() && d.square() == self.s
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        sign_sqrt_diff(&self.s, &Rat::zero(), &(r - &self.l))
    }

    /// Decimal rendering with `digits` places, truncated toward minus
    /// infinity. Display-only; never used in comparisons.
    pub fn decimal_string(&self, digits: u32) -> String {
        let pow = Rat::from(BigInt::from(10u32).pow(digits));
        let scaled = Surd {
            l: &self.l * &pow,
            s: &self.s * pow.square(),
        };
        decimal_of_scaled(scaled.floor(), digits)
    }
}

impl From<Rat> for Surd {
    fn from(r: Rat) -> Self {
        Surd::rational(r)
    }
}

/// Sign of `sqrt(s1) - sqrt(s2) - t` for `s1, s2 >= 0`, by repeated squaring
/// with sign bookkeeping. Every branch is an exact rational comparison.
fn sign_sqrt_diff(s1: &Rat, s2: &Rat, t: &Rat) -> Ordering {
    if t.is_negative() && t.square() > *s2 {
        // sqrt(s2) + t < 0 <= sqrt(s1)
        return Ordering::Greater;
    }
    let u = s1 - s2 - t.square();
    let v = t + t;
    if v.is_zero() || s2.is_zero() {
        // sqrt(s1) vs sqrt(s2) + t with one side square-free of cross terms:
        // the difference of squares u carries the sign.
        return rat_sign(&u);
    }
    // sqrt(s1) vs sqrt(s2) + t, both sides nonnegative: the squared
    // comparison leaves u vs v*sqrt(s2) with s2 > 0.
    if v.is_positive() {
        if !u.is_positive() {
            Ordering::Less
        } else {
            rat_sign(&(u.square() - v.square() * s2))
        }
    } else if !u.is_negative() {
        Ordering::Greater
    } else {
        rat_sign(&(v.square() * s2 - u.square()))
    }
}

fn rat_sign(x: &Rat) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Self) -> Ordering {
        sign_sqrt_diff(&self.s, &other.s, &(&other.l - &self.l))
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            write!(f, "{}", self.l)
        } else {
            write!(f, "{}+sqrt({})", self.l, self.s)
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}
