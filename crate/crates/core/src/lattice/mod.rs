//! Exact integer linear algebra on Z²: lattice vectors, 2×2 matrices,
//! extended rationals and Smith invariants.
//!
//! Everything is backed by [`BigInt`]; nothing in this crate touches floating
//! point.

mod matrix;
mod rational;
pub(crate) mod serde_int;
mod smith;

pub use matrix::{Mat2, UniMatrix};
pub use rational::ExtRational;
pub use smith::smith_invariants;

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// A point of the integer lattice Z².
///
/// The derived `Ord` is lexicographic on `(x, y)`; it is the total order used
/// to store hexagon vertex pairs canonically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector {
    #[serde(with = "serde_int")]
    pub x: BigInt,
    #[serde(with = "serde_int")]
    pub y: BigInt,
}

impl Vector {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Vector { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        Vector::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `x > 0`, or `x = 0` and `y > 0`.
    pub fn is_sign_normalized(&self) -> bool {
        self.x.is_positive() || (self.x.is_zero() && self.y.is_positive())
    }

    /// The representative of `±self` that is sign-normalized. The zero vector
    /// is returned unchanged.
    pub fn sign_normalized(self) -> Self {
        if self.is_zero() || self.is_sign_normalized() {
            self
        } else {
            -self
        }
    }

    /// `true` when `self` and `other` agree up to sign.
    pub fn same_line(&self, other: &Vector) -> bool {
        self == other || (&self.x + &other.x).is_zero() && (&self.y + &other.y).is_zero()
    }

    /// gcd of the coordinates (0 for the zero vector).
    pub fn content(&self) -> BigInt {
        self.x.gcd(&self.y)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    pub fn scale(&self, k: &BigInt) -> Vector {
        Vector { x: &self.x * k, y: &self.y * k }
    }
}

/// The hexagonal norm form `x² + xy + y²`.
pub fn q_norm(v: &Vector) -> BigInt {
    &v.x * &v.x + &v.x * &v.y + &v.y * &v.y
}

/// `x_v·y_w − y_v·x_w`, twice the signed area of the triangle `O v w`.
pub fn cross_det(v: &Vector, w: &Vector) -> BigInt {
    &v.x * &w.y - &v.y * &w.x
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { x: -self.x, y: -self.y }
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector { x: -&self.x, y: -&self.y }
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector { x: &self.x + &rhs.x, y: &self.y + &rhs.y }
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        Vector { x: &self.x - &rhs.x, y: &self.y - &rhs.y }
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        &self + &rhs
    }
}

impl Sub for Vector {
    type Output = Vector;
    fn sub(self, rhs: Vector) -> Vector {
        &self - &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q_norm_examples() {
        assert_eq!(q_norm(&Vector::new(1, 0)), BigInt::from(1));
        assert_eq!(q_norm(&Vector::new(1, -1)), BigInt::from(1));
        assert_eq!(q_norm(&Vector::new(171, -289)), BigInt::from(63343));
        assert_eq!(q_norm(&Vector::zero()), BigInt::from(0));
    }

    #[test]
    fn cross_det_examples() {
        assert_eq!(cross_det(&Vector::new(1, 0), &Vector::new(0, 1)), BigInt::from(1));
        assert_eq!(cross_det(&Vector::new(2, 1), &Vector::new(1, 1)), BigInt::from(1));
        assert_eq!(cross_det(&Vector::new(1, 1), &Vector::new(2, 2)), BigInt::from(0));
    }

    #[test]
    fn sign_normalization() {
        assert_eq!(Vector::new(-1, 1).sign_normalized(), Vector::new(1, -1));
        assert_eq!(Vector::new(0, -3).sign_normalized(), Vector::new(0, 3));
        assert_eq!(Vector::new(0, 3).sign_normalized(), Vector::new(0, 3));
        assert!(Vector::new(2, -5).same_line(&Vector::new(-2, 5)));
        assert!(!Vector::new(2, -5).same_line(&Vector::new(2, 5)));
    }

    proptest! {
        #[test]
        fn q_norm_even_and_definite(x in -10_000i64..10_000, y in -10_000i64..10_000) {
            let v = Vector::new(x, y);
            prop_assert_eq!(q_norm(&v), q_norm(&-&v));
            prop_assert_eq!(q_norm(&v) > BigInt::zero(), !v.is_zero());
        }

        #[test]
        fn cross_det_bilinear_antisymmetric(
            a in (-500i64..500, -500i64..500),
            b in (-500i64..500, -500i64..500),
            c in (-500i64..500, -500i64..500),
        ) {
            let (u, v, w) = (Vector::new(a.0, a.1), Vector::new(b.0, b.1), Vector::new(c.0, c.1));
            prop_assert_eq!(cross_det(&u, &v), -cross_det(&v, &u));
            prop_assert_eq!(cross_det(&(&u + &v), &w), cross_det(&u, &w) + cross_det(&v, &w));
        }
    }
}
