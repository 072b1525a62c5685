//! Exact rational arithmetic.
//!
//! Every distance value and every bound in this crate is a [`Rational`]:
//! an arbitrary-precision fraction kept in canonical reduced form with a
//! positive denominator. There is deliberately no floating point anywhere;
//! checks are exact or they error.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CoarseError;

/// An exact rational number.
///
/// Wire encoding is a string: `"7"`, `"-3/2"`. Denominators are always
/// positive and fractions fully reduced.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numerator: i64, denominator: i64) -> Self {
        assert!(denominator != 0, "zero denominator");
        Rational(BigRational::new(numerator.into(), denominator.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// Exact 2^exp as a rational integer.
    pub fn pow2(exp: u64) -> Self {
        Rational(BigRational::from_integer(BigInt::one() << exp))
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

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Smallest natural number (starting at 1) that is >= self.
    pub fn ceil_nat(&self) -> Result<u64, CoarseError> {
        let c = self.0.ceil().to_integer();
        if c <= BigInt::one() {
            return Ok(1);
        }
        c.to_u64()
            .ok_or_else(|| CoarseError::NumericOverflow(format!("ceiling of {self} exceeds u64")))
    }

    /// Floor as an unsigned integer; requires self >= 0.
    pub fn floor_u64(&self) -> Result<u64, CoarseError> {
        if self.is_negative() {
            return Err(CoarseError::InvalidParameter(format!(
                "floor_u64 of negative value {self}"
            )));
        }
        self.0
            .floor()
            .to_integer()
            .to_u64()
            .ok_or_else(|| CoarseError::NumericOverflow(format!("floor of {self} exceeds u64")))
    }

    pub(crate) fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub(crate) fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational(BigRational::from_integer(v))
    }
}

impl Add for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational(&self.0 + &rhs.0)
    }
}

impl Sub for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational(&self.0 - &rhs.0)
    }
}

impl Mul for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational(&self.0 * &rhs.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |t: &str| -> Result<BigInt, String> {
            t.parse::<BigInt>()
                .map_err(|_| format!("invalid integer literal `{t}`"))
        };
        match s.split_once('/') {
            None => Ok(Rational(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let num = parse_int(num)?;
                let den = parse_int(den)?;
                if den <= BigInt::zero() {
                    return Err(format!("denominator in `{s}` must be positive"));
                }
                Ok(Rational(BigRational::new(num, den)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic_is_exact_and_canonical() {
        assert_eq!(&r("1/3") + &r("1/6"), r("1/2"));
        assert_eq!(&r("2/4") - &r("1/2"), Rational::zero());
        assert_eq!(&r("-3/2") * &r("2/3"), r("-1"));
        assert_eq!(r("6/4"), r("3/2"));
        assert!(r("7/2") < r("4"));
    }

    #[test]
    fn pow2_grows_exactly() {
        assert_eq!(Rational::pow2(0), r("1"));
        assert_eq!(Rational::pow2(4), r("16"));
        assert_eq!(
            Rational::pow2(80).to_string(),
            "1208925819614629174706176"
        );
    }

    #[test]
    fn ceil_nat_starts_at_one() {
        assert_eq!(r("0").ceil_nat().unwrap(), 1);
        assert_eq!(r("-5").ceil_nat().unwrap(), 1);
        assert_eq!(r("1/2").ceil_nat().unwrap(), 1);
        assert_eq!(r("7/2").ceil_nat().unwrap(), 4);
        assert_eq!(r("4").ceil_nat().unwrap(), 4);
    }

    #[test]
    fn floor_u64_truncates() {
        assert_eq!(r("7/2").floor_u64().unwrap(), 3);
        assert_eq!(r("5").floor_u64().unwrap(), 5);
        assert!(r("-1/2").floor_u64().is_err());
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["0", "7", "-3", "3/2", "-11/4"] {
            assert_eq!(r(s).to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("a".parse::<Rational>().is_err());
    }

    #[test]
    fn serde_uses_strings() {
        let v: Rational = serde_json::from_str("\"7/2\"").unwrap();
        assert_eq!(v, r("7/2"));
        assert_eq!(serde_json::to_string(&v).unwrap(), "\"7/2\"");
    }
}
