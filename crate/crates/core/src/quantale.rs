//! Exact rationals in the unit interval and the two quantale structures on
//! them: the Łukasiewicz tensor with its residual, and truncated addition with
//! truncated subtraction.
//!
//! Everything here is exact. Values are kept in lowest terms by
//! [`num_rational::BigRational`], so structural equality is value equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RatError {
    #[error("malformed rational {0:?}: expected \"p/q\", \"0\" or \"1\"")]
    Malformed(String),
    #[error("rational {0} lies outside [0,1]")]
    OutOfRange(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

/// A rational number in the closed unit interval.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat01(BigRational);

impl Rat01 {
    pub fn zero() -> Self {
        Rat01(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat01(BigRational::one())
    }

    /// `num/den`, reduced. Fails unless the value lies in `[0,1]`.
    pub fn new(num: i64, den: i64) -> Result<Self, RatError> {
        if den == 0 {
            return Err(RatError::ZeroDenominator(format!("{num}/{den}")));
        }
        Self::from_ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_ratio(r: BigRational) -> Result<Self, RatError> {
        if r.is_negative() || r > BigRational::one() {
            return Err(RatError::OutOfRange(r.to_string()));
        }
        Ok(Rat01(r))
    }

    /// Clamps an arbitrary rational into `[0,1]`.
    pub fn clamp(r: BigRational) -> Self {
        if r.is_negative() {
            Self::zero()
        } else if r > BigRational::one() {
            Self::one()
        } else {
            Rat01(r)
        }
    }

    /// `1/2^n`.
    pub fn dyadic(n: u32) -> Self {
        Rat01(BigRational::new(BigInt::one(), BigInt::one() << n))
    }

    /// `k/q`; panics if `k > q` or `q == 0`.
    pub fn grid_point(k: u32, q: u32) -> Self {
        assert!(q > 0 && k <= q, "grid point {k}/{q} outside [0,1]");
        Rat01(BigRational::new(BigInt::from(k), BigInt::from(q)))
    }

    /// The grid `{0, 1/q, …, 1}` in increasing order.
    pub fn grid(q: u32) -> Vec<Self> {
        (0..=q).map(|k| Self::grid_point(k, q)).collect()
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn into_ratio(self) -> BigRational {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Whether the value is a multiple of `1/q`.
    pub fn on_grid(&self, q: u32) -> bool {
        (self.0.clone() * BigRational::from_integer(BigInt::from(q))).is_integer()
    }

    pub fn join(&self, other: &Self) -> Self {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn meet(&self, other: &Self) -> Self {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// `1 − u`, the order-reversing involution.
    pub fn complement(&self) -> Self {
        Rat01(BigRational::one() - &self.0)
    }

    /// `|u − v|`.
    pub fn abs_diff(&self, other: &Self) -> Self {
        Rat01((&self.0 - &other.0).abs())
    }
}

/// Łukasiewicz tensor `u⊙v = max(0, u+v−1)`.
pub fn luk_tensor(u: &Rat01, v: &Rat01) -> Rat01 {
    Rat01::clamp(&u.0 + &v.0 - BigRational::one())
}

/// Residual of the tensor: `v⋔u = min(1, 1−u+v)`, so that
/// `x⊙u ≤ y ⟺ x ≤ y⋔u`.
pub fn pitchfork(v: &Rat01, u: &Rat01) -> Rat01 {
    Rat01::clamp(BigRational::one() - &u.0 + &v.0)
}

/// Truncated subtraction `v⊖u = max(0, v−u)`. As a metric hom, `hom(u,v) = trunc_minus(v,u)`.
pub fn trunc_minus(v: &Rat01, u: &Rat01) -> Rat01 {
    Rat01::clamp(&v.0 - &u.0)
}

/// Truncated addition `u⊕v = min(1, u+v)`.
pub fn oplus(u: &Rat01, v: &Rat01) -> Rat01 {
    Rat01::clamp(&u.0 + &v.0)
}

impl fmt::Display for Rat01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned(s: &str, whole: &str) -> Result<BigInt, RatError> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(RatError::Malformed(whole.to_string()));
    }
    s.parse::<BigInt>()
        .map_err(|_| RatError::Malformed(whole.to_string()))
}

impl FromStr for Rat01 {
    type Err = RatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "0" => return Ok(Self::zero()),
            "1" => return Ok(Self::one()),
            _ => {}
        }
        let (num, den) = s
            .split_once('/')
            .ok_or_else(|| RatError::Malformed(s.to_string()))?;
        let num = parse_unsigned(num, s)?;
        let den = parse_unsigned(den, s)?;
        if den.is_zero() {
            return Err(RatError::ZeroDenominator(s.to_string()));
        }
        Self::from_ratio(BigRational::new(num, den))
    }
}

impl Serialize for Rat01 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat01 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat01 {
        s.parse().unwrap()
    }

    #[test]
    fn tensor_examples() {
        for v in Rat01::grid(8) {
            assert_eq!(luk_tensor(&Rat01::one(), &v), v);
        }
        assert_eq!(luk_tensor(&r("1/2"), &r("7/10")), r("1/5"));
        assert_eq!(luk_tensor(&r("1/4"), &r("1/4")), Rat01::zero());
    }

    #[test]
    fn pitchfork_examples() {
        for v in Rat01::grid(8) {
            assert_eq!(pitchfork(&v, &Rat01::zero()), Rat01::one());
            assert_eq!(pitchfork(&Rat01::one(), &v), Rat01::one());
        }
        assert_eq!(pitchfork(&r("1/2"), &r("7/10")), r("4/5"));
    }

    #[test]
    fn trunc_minus_examples() {
        assert_eq!(trunc_minus(&r("1/2"), &r("7/10")), Rat01::zero());
        assert_eq!(trunc_minus(&r("7/10"), &r("1/2")), r("1/5"));
        for u in Rat01::grid(8) {
            assert_eq!(trunc_minus(&u, &Rat01::zero()), u);
        }
    }

    #[test]
    fn oplus_examples() {
        for v in Rat01::grid(8) {
            assert_eq!(oplus(&Rat01::zero(), &v), v);
        }
        assert_eq!(oplus(&r("1/2"), &r("7/10")), Rat01::one());
        assert_eq!(oplus(&r("1/4"), &r("1/4")), r("1/2"));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(r("2/4").to_string(), "1/2");
        assert_eq!(r("3/3").to_string(), "1");
        assert_eq!(r("0/7").to_string(), "0");
        assert!(matches!(
            "3/2".parse::<Rat01>(),
            Err(RatError::OutOfRange(_))
        ));
        assert!(matches!(
            "1/0".parse::<Rat01>(),
            Err(RatError::ZeroDenominator(_))
        ));
        for bad in [
            "", "0.5", "-1/2", "1/-2", "2", "a/b", "1/2/3", " 1/2", "+1/2",
        ] {
            assert!(bad.parse::<Rat01>().is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn grid_membership() {
        assert!(r("1/4").on_grid(8));
        assert!(!r("1/3").on_grid(8));
        assert_eq!(Rat01::dyadic(3), r("1/8"));
        assert_eq!(Rat01::grid(4).len(), 5);
    }
}
