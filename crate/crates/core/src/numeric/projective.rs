use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// A point of P^1(Q) as a coprime integer pair `[x : y]`.
///
/// Canonical sign: `y > 0`, or `y == 0` and `x == 1`, so infinity is
/// exactly `[1 : 0]` and a finite rational `n/d` is `[n : d]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    x: BigInt,
    y: BigInt,
}

impl ProjectivePoint {
    pub fn new(x: BigInt, y: BigInt) -> Result<Self> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::Parse("[0 : 0] is not a point".into()));
        }
        Ok(Self::canonical(x, y))
    }

    /// Canonicalizes a pair known not to be `(0, 0)`.
    pub(crate) fn canonical(mut x: BigInt, mut y: BigInt) -> Self {
        debug_assert!(!(x.is_zero() && y.is_zero()));
        if y.is_zero() {
            return Self::infinity();
        }
        if x.is_zero() {
            return ProjectivePoint { x, y: BigInt::one() };
        }
        let g = x.gcd(&y);
        if !g.is_one() {
            x /= &g;
            y /= &g;
        }
        if y.is_negative() {
            x = -x;
            y = -y;
        }
        ProjectivePoint { x, y }
    }

    pub fn infinity() -> Self {
        ProjectivePoint {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.y.is_zero()
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    /// The affine coordinate `x/y`, or `None` at infinity.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_infinity() {
            None
        } else {
            // already coprime with y > 0
            Some(Rational::new(self.x.clone(), self.y.clone()).expect("y != 0"))
        }
    }

    pub fn bits(&self) -> u64 {
        self.x.bits().max(self.y.bits())
    }

    pub fn negate(&self) -> Self {
        if self.is_infinity() {
            self.clone()
        } else {
            ProjectivePoint {
                x: -&self.x,
                y: self.y.clone(),
            }
        }
    }
}

impl From<Rational> for ProjectivePoint {
    fn from(r: Rational) -> Self {
        let (x, y) = r.into_parts();
        ProjectivePoint { x, y }
    }
}

impl From<&Rational> for ProjectivePoint {
    fn from(r: &Rational) -> Self {
        ProjectivePoint {
            x: r.numer().clone(),
            y: r.denom().clone(),
        }
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_rational() {
            None => f.write_str("inf"),
            Some(r) => write!(f, "{r}"),
        }
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ProjectivePoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "inf" {
            Ok(Self::infinity())
        } else {
            Ok(s.parse::<Rational>()?.into())
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjectivePoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
