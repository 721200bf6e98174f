//! Nonnegative rationals extended with `∞`.

use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::QcatError;

/// A value in `[0, ∞]` with exact rational finite part. `Fin` sorts below `Inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtValue {
    Fin(BigRational),
    Inf,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Fin(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        assert!(n >= 0, "negative distance");
        ExtValue::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        let r = BigRational::new(BigInt::from(n), BigInt::from(d));
        assert!(!r.is_negative(), "negative distance");
        ExtValue::Fin(r)
    }

    /// `2^{-k}`.
    pub fn dyadic(k: u32) -> Self {
        ExtValue::Fin(BigRational::new(BigInt::one(), BigInt::one() << k as usize))
    }

    pub fn from_rational(r: BigRational) -> Option<Self> {
        (!r.is_negative()).then_some(ExtValue::Fin(r))
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtValue::Inf)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Fin(r) if r.is_zero())
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Fin(r) => Some(r),
            ExtValue::Inf => None,
        }
    }

    /// Truncated subtraction `max(self − other, 0)` with `∞⊖q = ∞`, `q⊖∞ = 0`, `∞⊖∞ = 0`.
    pub fn monus(&self, other: &ExtValue) -> ExtValue {
        match (self, other) {
            (ExtValue::Inf, ExtValue::Fin(_)) => ExtValue::Inf,
            (_, ExtValue::Inf) => ExtValue::zero(),
            (ExtValue::Fin(a), ExtValue::Fin(b)) => {
                if a > b {
                    ExtValue::Fin(a - b)
                } else {
                    ExtValue::zero()
                }
            }
        }
    }

    pub fn join(&self, other: &ExtValue) -> ExtValue {
        std::cmp::max(self, other).clone()
    }

    pub fn meet(&self, other: &ExtValue) -> ExtValue {
        std::cmp::min(self, other).clone()
    }

    /// `a − q + c`, `∞` as soon as `a` or `c` is. Requires `q` finite with `q ≤ a + c`.
    pub fn tri(a: &ExtValue, q: &ExtValue, c: &ExtValue) -> ExtValue {
        match (a, q, c) {
            (ExtValue::Fin(a), ExtValue::Fin(q), ExtValue::Fin(c)) => {
                let r = a + c - q;
                ExtValue::Fin(if r.is_negative() { BigRational::zero() } else { r })
            }
            (ExtValue::Fin(_), ExtValue::Inf, ExtValue::Fin(_)) => ExtValue::zero(),
            _ => ExtValue::Inf,
        }
    }

    /// Multiplies a finite value by an integer, for scaling onto a grid.
    pub fn scaled(&self, k: u64) -> ExtValue {
        match self {
            ExtValue::Fin(r) => ExtValue::Fin(r * BigRational::from_integer(BigInt::from(k))),
            ExtValue::Inf => ExtValue::Inf,
        }
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Fin(a), ExtValue::Fin(b)) => ExtValue::Fin(a + b),
            _ => ExtValue::Inf,
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Inf => write!(f, "inf"),
            ExtValue::Fin(r) if r.is_integer() => write!(f, "{}", r.numer()),
            ExtValue::Fin(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for ExtValue {
    type Err = QcatError;
    fn from_str(s: &str) -> Result<Self, QcatError> {
        let bad = || QcatError::InvalidArgument(format!("not a nonnegative rational or inf: {s:?}"));
        let s = s.trim();
        if s == "inf" || s == "∞" {
            return Ok(ExtValue::Inf);
        }
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        ExtValue::from_rational(BigRational::new(n, d)).ok_or_else(bad)
    }
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!("1/3".parse::<ExtValue>().unwrap(), ExtValue::ratio(1, 3));
        assert_eq!("2/4".parse::<ExtValue>().unwrap().to_string(), "1/2");
        assert_eq!("inf".parse::<ExtValue>().unwrap(), ExtValue::Inf);
        assert_eq!(ExtValue::int(3).to_string(), "3");
        assert!("-1".parse::<ExtValue>().is_err());
        assert!("1/0".parse::<ExtValue>().is_err());
    }

    #[test]
    fn monus_conventions() {
        let q = ExtValue::int(2);
        assert_eq!(ExtValue::Inf.monus(&q), ExtValue::Inf);
        assert_eq!(q.monus(&ExtValue::Inf), ExtValue::zero());
        assert_eq!(ExtValue::Inf.monus(&ExtValue::Inf), ExtValue::zero());
        assert_eq!(ExtValue::int(1).monus(&q), ExtValue::zero());
    }

    #[test]
    fn order_puts_inf_last() {
        assert!(ExtValue::int(1000) < ExtValue::Inf);
        assert!(ExtValue::ratio(1, 3) < ExtValue::ratio(1, 2));
    }
}
