//! Exact extended-rational values: the codomain of additive generators.
//!
//! A generator maps lattice elements into `[-inf, +inf]`. Membership tests
//! against the generator's range decide which construction branch fires, so
//! values are exact rationals; float ties would be meaningless.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use num_traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = Rational64;

/// A rational number extended with two infinities, totally ordered as
/// `-inf < finite < +inf`. Serializes as its display string ("-11", "3/2",
/// "-inf", "+inf"), the same form the on-disk generator tables use.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ExtValue {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl Serialize for ExtValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// `(-inf) + (+inf)` has no value. The construction only ever adds values
/// from same-sign regions, so hitting this is a bug in the caller.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("indeterminate sum (-inf) + (+inf)")]
pub struct IndeterminateSum;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse {0:?} as a rational or +/-inf")]
pub struct ValueParseError(pub String);

impl ExtValue {
    pub fn int(n: i64) -> Self {
        ExtValue::Finite(Rational::from_integer(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        ExtValue::Finite(Rational::new(num, den))
    }

    pub fn zero() -> Self {
        ExtValue::Finite(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtValue::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtValue::Finite(_))
    }

    /// Sign: -1, 0 or +1, with the infinities at the extremes.
    pub fn signum(&self) -> i8 {
        match self {
            ExtValue::NegInf => -1,
            ExtValue::PosInf => 1,
            ExtValue::Finite(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtValue::NegInf => ExtValue::PosInf,
            ExtValue::PosInf => ExtValue::NegInf,
            ExtValue::Finite(r) => ExtValue::Finite(-r),
        }
    }
}

/// Exact sum; an infinity absorbs any finite value. Opposite infinities are
/// an error, never silently absorbed.
pub fn ext_add(u: ExtValue, v: ExtValue) -> Result<ExtValue, IndeterminateSum> {
    use ExtValue::*;
    match (u, v) {
        (NegInf, PosInf) | (PosInf, NegInf) => Err(IndeterminateSum),
        (NegInf, _) | (_, NegInf) => Ok(NegInf),
        (PosInf, _) | (_, PosInf) => Ok(PosInf),
        (Finite(a), Finite(b)) => Ok(Finite(a + b)),
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtValue::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (_, NegInf) | (PosInf, _) => Ordering::Greater,
            (Finite(a), Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::NegInf => write!(f, "-inf"),
            ExtValue::PosInf => write!(f, "+inf"),
            ExtValue::Finite(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl FromStr for ExtValue {
    type Err = ValueParseError;

    /// Accepts `-11`, `3/2`, `-inf`, `+inf` (also a bare `inf` and the
    /// unicode minus sign, which the paper's tables use).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s.trim().replace('\u{2212}', "-");
        match norm.as_str() {
            "-inf" => return Ok(ExtValue::NegInf),
            "+inf" | "inf" => return Ok(ExtValue::PosInf),
            _ => {}
        }
        let parse_int = |t: &str| -> Option<i64> { t.parse::<i64>().ok() };
        if let Some((n, d)) = norm.split_once('/') {
            let n = parse_int(n).ok_or_else(|| ValueParseError(s.to_string()))?;
            let d = parse_int(d).ok_or_else(|| ValueParseError(s.to_string()))?;
            if d == 0 {
                return Err(ValueParseError(s.to_string()));
            }
            Ok(ExtValue::Finite(Rational::new(n, d)))
        } else {
            let n = parse_int(&norm).ok_or_else(|| ValueParseError(s.to_string()))?;
            Ok(ExtValue::int(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_sum_is_exact() {
        assert_eq!(ext_add(ExtValue::int(6), ExtValue::int(6)), Ok(ExtValue::int(12)));
        assert_eq!(
            ext_add(ExtValue::ratio(1, 2), ExtValue::ratio(1, 3)),
            Ok(ExtValue::ratio(5, 6))
        );
    }

    #[test]
    fn infinity_absorbs_finite() {
        assert_eq!(ext_add(ExtValue::NegInf, ExtValue::int(-5)), Ok(ExtValue::NegInf));
        assert_eq!(ext_add(ExtValue::int(7), ExtValue::PosInf), Ok(ExtValue::PosInf));
        assert_eq!(ext_add(ExtValue::NegInf, ExtValue::NegInf), Ok(ExtValue::NegInf));
    }

    #[test]
    fn opposite_infinities_are_an_error() {
        assert_eq!(ext_add(ExtValue::NegInf, ExtValue::PosInf), Err(IndeterminateSum));
        assert_eq!(ext_add(ExtValue::PosInf, ExtValue::NegInf), Err(IndeterminateSum));
    }

    #[test]
    fn total_order() {
        let vals = [
            ExtValue::NegInf,
            ExtValue::int(-11),
            ExtValue::ratio(-1, 2),
            ExtValue::zero(),
            ExtValue::ratio(3, 2),
            ExtValue::int(24),
            ExtValue::PosInf,
        ];
        for w in vals.windows(2) {
            assert!(w[0] < w[1], "{} < {}", w[0], w[1]);
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["-11", "0", "3/2", "-7/3", "-inf", "+inf"] {
            let v: ExtValue = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        // unicode minus and reducible fractions normalise
        assert_eq!("\u{2212}4".parse::<ExtValue>().unwrap(), ExtValue::int(-4));
        assert_eq!("6/4".parse::<ExtValue>().unwrap(), ExtValue::ratio(3, 2));
        assert!("1/0".parse::<ExtValue>().is_err());
        assert!("abc".parse::<ExtValue>().is_err());
    }
}
