use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Vector;
use crate::error::{Error, Result};

/// A point of `Q ∪ {∞}` in lowest terms.
///
/// `den ≥ 0`, `gcd(|num|, den) = 1`, and `∞` is exactly `1/0`, so structural
/// equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ExtRational {
    num: BigInt,
    den: BigInt,
}

impl ExtRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let (mut num, mut den) = (num.into(), den.into());
        if num.is_zero() && den.is_zero() {
            return Err(Error::Parse("0/0 is not a point of the extended line".into()));
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_zero() {
            return Ok(ExtRational::infinity());
        }
        let g = num.gcd(&den);
        Ok(ExtRational { num: num / &g, den: den / g })
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        ExtRational { num: n.into(), den: BigInt::one() }
    }

    pub fn infinity() -> Self {
        ExtRational { num: BigInt::one(), den: BigInt::zero() }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// The primitive lattice vector `(num, den)`; `∞ ↦ (1, 0)`.
    pub fn to_vector(&self) -> Vector {
        Vector { x: self.num.clone(), y: self.den.clone() }
    }

    /// Slope point `x/y` of a nonzero lattice vector (sign and content ignored).
    pub fn from_vector(v: &Vector) -> Result<Self> {
        ExtRational::new(v.x.clone(), v.y.clone())
    }

    /// Farey adjacency `|m·q − n·p| = 1`.
    pub fn is_farey_neighbor(&self, other: &ExtRational) -> bool {
        (&self.num * &other.den - &self.den * &other.num).abs().is_one()
    }
}

impl Ord for ExtRational {
    /// Numeric order on Q with `∞` greatest.
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for ExtRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    /// Accepts `p/q`, `n`, `inf` (also `∞`, `1/0`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s == "∞" {
            return Ok(ExtRational::infinity());
        }
        let bad = || Error::Parse(format!("invalid rational {s:?}, expected p/q, n or inf"));
        match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                ExtRational::new(p, q)
            }
            None => Ok(ExtRational::integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl TryFrom<String> for ExtRational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<ExtRational> for String {
    fn from(r: ExtRational) -> String {
        r.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(ExtRational::new(4, -6).unwrap(), r("-2/3"));
        assert_eq!(ExtRational::new(-5, 0).unwrap(), ExtRational::infinity());
        assert_eq!(r("1/0"), r("inf"));
        assert_eq!(r("6/3"), ExtRational::integer(2));
        assert!(ExtRational::new(0, 0).is_err());
        assert!("x/2".parse::<ExtRational>().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["inf", "0", "-7", "5/2", "-1/3"] {
            assert_eq!(r(s).to_string(), s);
        }
    }

    #[test]
    fn ordering_puts_infinity_last() {
        let mut v = vec![r("inf"), r("1/2"), r("-1"), r("0")];
        v.sort();
        assert_eq!(v, vec![r("-1"), r("0"), r("1/2"), r("inf")]);
    }

    #[test]
    fn vector_correspondence() {
        assert_eq!(ExtRational::from_vector(&Vector::new(1, -1)).unwrap(), r("-1"));
        assert_eq!(ExtRational::from_vector(&Vector::new(1, 0)).unwrap(), r("inf"));
        assert_eq!(r("-1").to_vector(), Vector::new(-1, 1));
    }
}
