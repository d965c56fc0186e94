use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{serde_int, Vector};
use crate::error::{Error, Result};

/// A 2×2 integer matrix `[[a, b], [c, d]]` with unrestricted determinant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Rows", into = "Rows")]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

#[derive(Serialize, Deserialize)]
struct Int(#[serde(with = "serde_int")] BigInt);

#[derive(Serialize, Deserialize)]
struct Rows([[Int; 2]; 2]);

impl From<Rows> for Mat2 {
    fn from(Rows([[a, b], [c, d]]): Rows) -> Self {
        Mat2 { a: a.0, b: b.0, c: c.0, d: d.0 }
    }
}

impl From<Mat2> for Rows {
    fn from(m: Mat2) -> Self {
        Rows([[Int(m.a), Int(m.b)], [Int(m.c), Int(m.d)]])
    }
}

impl Mat2 {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Mat2 { a: a.into(), b: b.into(), c: c.into(), d: d.into() }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), d: self.d.clone() }
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        Vector { x: &self.a * &v.x + &self.b * &v.y, y: &self.c * &v.x + &self.d * &v.y }
    }

    pub fn sub_identity(&self) -> Mat2 {
        Mat2 { a: &self.a - 1, b: self.b.clone(), c: self.c.clone(), d: &self.d - 1 }
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// A 2×2 integer matrix with determinant ±1.
///
/// Operations that need an element of SL(2,Z) call [`UniMatrix::require_sl2`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Mat2", into = "Mat2")]
pub struct UniMatrix(Mat2);

impl TryFrom<Mat2> for UniMatrix {
    type Error = Error;

    fn try_from(m: Mat2) -> Result<Self> {
        let det = m.det();
        if det.abs().is_one() {
            Ok(UniMatrix(m))
        } else {
            Err(Error::NotUnimodular(det))
        }
    }
}

impl From<UniMatrix> for Mat2 {
    fn from(m: UniMatrix) -> Mat2 {
        m.0
    }
}

impl UniMatrix {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        UniMatrix::try_from(Mat2::new(a, b, c, d))
    }

    /// Builds an SL(2,Z) element, rejecting determinant −1 as well.
    pub fn sl2(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Self> {
        let m = UniMatrix::new(a, b, c, d)?;
        m.require_sl2()?;
        Ok(m)
    }

    /// Matrix whose columns are `first` and `second`.
    pub fn from_columns(first: &Vector, second: &Vector) -> Result<Self> {
        UniMatrix::new(first.x.clone(), second.x.clone(), first.y.clone(), second.y.clone())
    }

    /// Some `B ∈ SL(2,Z)` with first column `first`; needs a primitive vector.
    pub fn completing(first: &Vector) -> Result<Self> {
        let egcd = first.x.extended_gcd(&first.y);
        if !egcd.gcd.abs().is_one() {
            return Err(Error::NotCoprime(first.x.clone(), first.y.clone()));
        }
        // x·a + y·b = g = ±1, so a·(x·g) − b·(−y·g) = 1
        let d = &egcd.x * &egcd.gcd;
        let c = -(&egcd.y * &egcd.gcd);
        UniMatrix::sl2(first.x.clone(), c, first.y.clone(), d)
    }

    /// Caller guarantees `det = ±1`.
    pub(crate) fn from_mat2_unchecked(m: Mat2) -> Self {
        debug_assert!(m.det().abs().is_one());
        UniMatrix(m)
    }

    pub fn identity() -> Self {
        UniMatrix(Mat2::identity())
    }

    /// `S = [[0,-1],[1,0]]`, rotation by a quarter turn.
    pub fn s() -> Self {
        UniMatrix(Mat2::new(0, -1, 1, 0))
    }

    /// `T = [[1,1],[0,1]]`, the Jordan block.
    pub fn t() -> Self {
        UniMatrix(Mat2::new(1, 1, 0, 1))
    }

    /// `C = [[0,1],[1,0]]`, the coordinate swap (det −1).
    pub fn swap() -> Self {
        UniMatrix(Mat2::new(0, 1, 1, 0))
    }

    pub fn as_mat2(&self) -> &Mat2 {
        &self.0
    }

    pub fn a(&self) -> &BigInt {
        &self.0.a
    }
    pub fn b(&self) -> &BigInt {
        &self.0.b
    }
    pub fn c(&self) -> &BigInt {
        &self.0.c
    }
    pub fn d(&self) -> &BigInt {
        &self.0.d
    }

    /// Either `+1` or `-1`.
    pub fn det_sign(&self) -> i32 {
        if self.0.det().is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn is_sl2(&self) -> bool {
        self.det_sign() == 1
    }

    pub fn require_sl2(&self) -> Result<()> {
        if self.is_sl2() {
            Ok(())
        } else {
            Err(Error::NotSL2(self.0.det()))
        }
    }

    pub fn trace(&self) -> BigInt {
        self.0.trace()
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Mat2::identity()
    }

    /// `true` for `±I`.
    pub fn is_scalar(&self) -> bool {
        self.0.b.is_zero() && self.0.c.is_zero() && self.0.a == self.0.d
    }

    pub fn first_column(&self) -> Vector {
        Vector { x: self.0.a.clone(), y: self.0.c.clone() }
    }

    pub fn second_column(&self) -> Vector {
        Vector { x: self.0.b.clone(), y: self.0.d.clone() }
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        self.0.apply(v)
    }

    /// Exact inverse: the adjugate scaled by `det = ±1`.
    pub fn inverse(&self) -> UniMatrix {
        let Mat2 { a, b, c, d } = &self.0;
        let adj = Mat2 { a: d.clone(), b: -b, c: -c, d: a.clone() };
        if self.is_sl2() {
            UniMatrix(adj)
        } else {
            -UniMatrix(adj)
        }
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow(&self, exponent: i64) -> UniMatrix {
        let mut base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = UniMatrix::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self⁻¹ · m · self`.
    pub fn conjugate(&self, m: &UniMatrix) -> UniMatrix {
        &(&self.inverse() * m) * self
    }

    pub fn transpose(&self) -> UniMatrix {
        UniMatrix(self.0.transpose())
    }
}

impl Mul for &UniMatrix {
    type Output = UniMatrix;
    fn mul(self, rhs: &UniMatrix) -> UniMatrix {
        UniMatrix(&self.0 * &rhs.0)
    }
}

impl Mul for UniMatrix {
    type Output = UniMatrix;
    fn mul(self, rhs: UniMatrix) -> UniMatrix {
        &self * &rhs
    }
}

impl Neg for UniMatrix {
    type Output = UniMatrix;
    fn neg(self) -> UniMatrix {
        let Mat2 { a, b, c, d } = self.0;
        UniMatrix(Mat2 { a: -a, b: -b, c: -c, d: -d })
    }
}

impl Neg for &UniMatrix {
    type Output = UniMatrix;
    fn neg(self) -> UniMatrix {
        -self.clone()
    }
}

impl fmt::Display for UniMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}
