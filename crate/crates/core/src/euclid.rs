//! Euclid complexity, continued fractions, and the `R₁/R₂` word realising a
//! coprime pair as the first column of an SL(2,Z) matrix.
//!
//! `E(p, q)` counts subtractions of the smaller entry from the larger one
//! needed to reach `(0, 1)`; it equals the sum of the partial quotients of
//! `p/q`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{serde_int, Mat2, UniMatrix};

/// Pairs whose larger entry exceeds this are not run through the literal
/// subtractive oracle.
pub const DEFAULT_ORACLE_CUTOFF: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    #[serde(with = "serde_int::vec")]
    terms: Vec<BigInt>,
}

impl ContinuedFraction {
    pub fn terms(&self) -> &[BigInt] {
        &self.terms
    }

    pub fn sum(&self) -> BigInt {
        self.terms.iter().sum()
    }

    /// Evaluates back to `(p, q)` in lowest terms.
    pub fn evaluate(&self) -> (BigInt, BigInt) {
        let mut num = BigInt::one();
        let mut den = BigInt::zero();
        for t in self.terms.iter().rev() {
            let next = t * &num + &den;
            den = std::mem::replace(&mut num, next);
        }
        (num, den)
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

fn require_coprime(p: &BigInt, q: &BigInt) -> Result<()> {
    if p.gcd(q).is_one() {
        Ok(())
    } else {
        Err(Error::NotCoprime(p.clone(), q.clone()))
    }
}

fn require_nonnegative(p: &BigInt, q: &BigInt) -> Result<()> {
    match [p, q].into_iter().find(|v| v.is_negative()) {
        Some(v) => Err(Error::NonPositive(v.clone())),
        None => Ok(()),
    }
}

/// Expansion of `p/q` for coprime `p ≥ q ≥ 1`. The last term is at least 2
/// except for `1/1 = [1]`.
pub fn continued_fraction(p: &BigInt, q: &BigInt) -> Result<ContinuedFraction> {
    for v in [p, q] {
        if !v.is_positive() {
            return Err(Error::NonPositive(v.clone()));
        }
    }
    require_coprime(p, q)?;
    if p < q {
        return Err(Error::InvalidRange(format!("expected p >= q, got {p}/{q}")));
    }
    let mut terms = Vec::new();
    let (mut a, mut b) = (p.clone(), q.clone());
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        terms.push(quot);
        a = std::mem::replace(&mut b, rem);
    }
    Ok(ContinuedFraction { terms })
}

/// `E(p, q)` on unordered coprime nonnegative pairs; `E(1,0) = E(0,1) = 0`.
pub fn euclid_complexity(p: &BigInt, q: &BigInt) -> Result<BigInt> {
    require_nonnegative(p, q)?;
    require_coprime(p, q)?;
    let (mut a, mut b) = if p >= q { (p.clone(), q.clone()) } else { (q.clone(), p.clone()) };
    let mut total = BigInt::zero();
    while !b.is_zero() {
        let (quot, rem) = a.div_rem(&b);
        total += quot;
        a = std::mem::replace(&mut b, rem);
    }
    Ok(total)
}

/// Machine-word `E(p, q)` for sweeps. Callers guarantee coprimality.
pub fn euclid_complexity_u64(p: u64, q: u64) -> u64 {
    let (mut a, mut b) = if p >= q { (p, q) } else { (q, p) };
    let mut total = 0;
    while b != 0 {
        total += a / b;
        (a, b) = (b, a % b);
    }
    total
}

/// Literal subtractive Euclid: subtract the smaller entry from the larger
/// until the unordered pair is `(0, 1)`, counting steps.
pub fn euclid_subtractive_oracle(p: &BigInt, q: &BigInt) -> Result<BigInt> {
    require_nonnegative(p, q)?;
    require_coprime(p, q)?;
    let (mut a, mut b) = (p.clone(), q.clone());
    let mut steps = BigInt::zero();
    while !a.is_zero() && !b.is_zero() {
        if a >= b {
            a -= &b;
        } else {
            b -= &a;
        }
        steps += 1;
    }
    Ok(steps)
}

/// Runs the subtractive oracle against the division-based count when
/// `max(p, q) ≤ cutoff`. Returns `None` above the cutoff.
pub fn oracle_agrees(p: &BigInt, q: &BigInt, cutoff: u64) -> Result<Option<bool>> {
    let fast = euclid_complexity(p, q)?;
    if p.max(q) > &BigInt::from(cutoff) {
        return Ok(None);
    }
    Ok(Some(euclid_subtractive_oracle(p, q)? == fast))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RowOp {
    /// `[[1,1],[0,1]]`
    R1,
    /// `[[1,0],[1,1]]`
    R2,
}

impl RowOp {
    fn power(self, n: &BigInt) -> UniMatrix {
        let m = match self {
            RowOp::R1 => Mat2 { a: BigInt::one(), b: n.clone(), c: BigInt::zero(), d: BigInt::one() },
            RowOp::R2 => Mat2 { a: BigInt::one(), b: BigInt::zero(), c: n.clone(), d: BigInt::one() },
        };
        UniMatrix::from_mat2_unchecked(m)
    }

    fn other(self) -> RowOp {
        match self {
            RowOp::R1 => RowOp::R2,
            RowOp::R2 => RowOp::R1,
        }
    }
}

/// A word `R₁^{n₁} R₂^{n₂} R₁^{n₃} … R_ε^{n_k − 1} R₂` with adjacent equal
/// letters merged.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EuclidWord {
    factors: Vec<(RowOp, Exponent)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent(#[serde(with = "serde_int")] pub BigInt);

impl EuclidWord {
    pub fn factors(&self) -> impl Iterator<Item = (RowOp, &BigInt)> {
        self.factors.iter().map(|(op, e)| (*op, &e.0))
    }

    pub fn exponent_sum(&self) -> BigInt {
        self.factors.iter().map(|(_, e)| &e.0).sum()
    }

    pub fn product(&self) -> UniMatrix {
        self.factors.iter().fold(UniMatrix::identity(), |acc, (op, e)| &acc * &op.power(&e.0))
    }

    fn push(&mut self, op: RowOp, n: BigInt) {
        if n.is_zero() {
            return;
        }
        match self.factors.last_mut() {
            Some((last, e)) if *last == op => e.0 += n,
            _ => self.factors.push((op, Exponent(n))),
        }
    }
}

impl fmt::Display for EuclidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(op, e)| if e.0.is_one() { format!("{op:?}") } else { format!("{op:?}^{}", e.0) })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// The word whose product is `[[p, r], [q, s]]`, the unique SL(2,Z) matrix
/// with first column `(p, q)` and second column entries in `(0, p] × (0, q]`.
pub fn euclid_word(p: &BigInt, q: &BigInt) -> Result<EuclidWord> {
    if !(q.is_positive() && p > q) {
        return Err(Error::InvalidRange(format!("expected p > q >= 1, got ({p}, {q})")));
    }
    let cf = continued_fraction(p, q)?;
    let k = cf.terms.len();
    let mut word = EuclidWord { factors: Vec::new() };
    let mut op = RowOp::R1;
    for (i, n) in cf.terms.iter().enumerate() {
        let n = if i + 1 == k { n - 1 } else { n.clone() };
        word.push(op, n);
        op = op.other();
    }
    word.push(RowOp::R2, BigInt::one());
    Ok(word)
}

/// A violation of `E(p,q) = E(p,r)` for `qr ≡ ±1 (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InverseSymmetryViolation {
    pub p: u64,
    pub q: u64,
    pub r: u64,
    pub e_q: u64,
    pub e_r: u64,
}

/// `q⁻¹ mod p` for coprime `q`, `p ≥ 2`.
pub fn mod_inverse_u64(q: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (q as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    old_s.rem_euclid(p as i128) as u64
}

/// `q⁻¹ mod p` in `[0, p)`, for coprime `q` and `p ≥ 1`.
pub fn mod_inverse(q: &BigInt, p: &BigInt) -> Result<BigInt> {
    let egcd = q.extended_gcd(p);
    if !egcd.gcd.abs().is_one() {
        return Err(Error::NotCoprime(q.clone(), p.clone()));
    }
    Ok((egcd.x * egcd.gcd).mod_floor(p))
}

/// Checks `E(p,q) = E(p,r)` for every `3 ≤ p ≤ p_max` and all `0 < q, r < p`
/// with `gcd(p,q) = 1` and `qr ≡ ±1 (mod p)`. Returns the violations.
pub fn inverse_symmetry_scan(p_max: u64) -> Result<Vec<InverseSymmetryViolation>> {
    if p_max < 3 {
        return Err(Error::InvalidRange(format!("p_max must be at least 3, got {p_max}")));
    }
    let mut violations = Vec::new();
    for p in 3..=p_max {
        for q in 1..p {
            if q.gcd(&p) != 1 {
                continue;
            }
            let e_q = euclid_complexity_u64(p, q);
            let inv = mod_inverse_u64(q, p);
            for r in [inv, p - inv] {
                let e_r = euclid_complexity_u64(p, r);
                if e_q != e_r {
                    violations.push(InverseSymmetryViolation { p, q, r, e_q, e_r });
                }
            }
        }
    }
    Ok(violations)
}

/// Converts a complexity to `u64` for path-length bookkeeping.
pub(crate) fn to_u64(value: &BigInt) -> u64 {
    value.to_u64().expect("complexity fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn cf(p: i64, q: i64) -> Vec<i64> {
        continued_fraction(&b(p), &b(q)).unwrap().terms().iter().map(|t| t.to_i64().unwrap()).collect()
    }

    fn e(p: i64, q: i64) -> i64 {
        euclid_complexity(&b(p), &b(q)).unwrap().to_i64().unwrap()
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(cf(5, 2), vec![2, 2]);
        assert_eq!(cf(289, 171), vec![1, 1, 2, 4, 2, 2, 2]);
        assert_eq!(cf(3, 1), vec![3]);
        assert_eq!(cf(1, 1), vec![1]);
        let c = continued_fraction(&b(289), &b(171)).unwrap();
        assert_eq!(c.evaluate(), (b(289), b(171)));
    }

    #[test]
    fn continued_fraction_errors() {
        assert_eq!(continued_fraction(&b(4), &b(2)), Err(Error::NotCoprime(b(4), b(2))));
        assert_eq!(continued_fraction(&b(0), &b(1)), Err(Error::NonPositive(b(0))));
        assert!(matches!(continued_fraction(&b(2), &b(5)), Err(Error::InvalidRange(_))));
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(e(5, 2), 4);
        assert_eq!(e(289, 171), 14);
        assert_eq!(e(1, 1), 1);
        assert_eq!(e(1, 0), 0);
        assert_eq!(e(0, 1), 0);
        assert_eq!(e(2, 5), 4);
        assert_eq!(euclid_complexity(&b(6), &b(4)), Err(Error::NotCoprime(b(6), b(4))));
        assert_eq!(euclid_complexity(&b(0), &b(0)), Err(Error::NotCoprime(b(0), b(0))));
        assert_eq!(euclid_complexity(&b(-3), &b(1)), Err(Error::NonPositive(b(-3))));
    }

    #[test]
    fn oracle_examples() {
        let o = |p, q| euclid_subtractive_oracle(&b(p), &b(q)).unwrap().to_i64().unwrap();
        assert_eq!(o(7, 3), 5);
        assert_eq!(o(2, 1), 2);
        assert_eq!(o(1, 0), 0);
        assert_eq!(o(5, 2), 4);
        assert_eq!(oracle_agrees(&b(2_000_001), &b(2), DEFAULT_ORACLE_CUTOFF).unwrap(), None);
    }

    #[test]
    fn division_count_matches_subtraction_count() {
        for p in 0..=300i64 {
            for q in 0..=300i64 {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                assert_eq!(oracle_agrees(&b(p), &b(q), DEFAULT_ORACLE_CUTOFF).unwrap(), Some(true), "({p},{q})");
                assert_eq!(euclid_complexity_u64(p as u64, q as u64) as i64, e(p, q));
                if 0 < q && q < p {
                    assert_eq!(e(p, q), e(p, p - q));
                }
            }
        }
    }

    #[test]
    fn word_examples() {
        let w = euclid_word(&b(5), &b(2)).unwrap();
        assert_eq!(w.to_string(), "R1^2 R2^2");
        assert_eq!(w.product(), UniMatrix::new(5, 2, 2, 1).unwrap());
        let w = euclid_word(&b(2), &b(1)).unwrap();
        assert_eq!(w.to_string(), "R1 R2");
        assert_eq!(w.product(), UniMatrix::new(2, 1, 1, 1).unwrap());
        let w = euclid_word(&b(3), &b(1)).unwrap();
        assert_eq!(w.to_string(), "R1^2 R2");
        assert_eq!(w.product(), UniMatrix::new(3, 2, 1, 1).unwrap());
        assert!(euclid_word(&b(1), &b(1)).is_err());
    }

    /// Brute force: the unique `(r, s)` with `ps − qr = 1`, `0 < r ≤ p`, `0 < s ≤ q`.
    fn second_column_by_search(p: i64, q: i64) -> Vec<(i64, i64)> {
        let mut found = Vec::new();
        for r in 1..=p {
            for s in 1..=q {
                if p * s - q * r == 1 {
                    found.push((r, s));
                }
            }
        }
        found
    }

    #[test]
    fn word_product_properties() {
        for p in 2..=80i64 {
            for q in 1..p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                let w = euclid_word(&b(p), &b(q)).unwrap();
                let m = w.product();
                assert_eq!(m.first_column(), crate::lattice::Vector::new(p, q));
                assert!(m.is_sl2());
                let expected = second_column_by_search(p, q);
                assert_eq!(expected.len(), 1);
                assert_eq!((m.b().to_i64().unwrap(), m.d().to_i64().unwrap()), expected[0]);
                assert_eq!(w.exponent_sum(), b(e(p, q)));
            }
        }
    }

    #[test]
    fn inverse_symmetry_small() {
        assert!(inverse_symmetry_scan(7).unwrap().is_empty());
        assert_eq!(e(7, 3), 5);
        assert_eq!(e(7, 5), 5);
        assert_eq!(e(5, 2), e(5, 3));
        assert!(inverse_symmetry_scan(2).is_err());
    }

    #[test]
    fn mod_inverses() {
        assert_eq!(mod_inverse_u64(3, 7), 5);
        assert_eq!(mod_inverse(&b(3), &b(7)).unwrap(), b(5));
        assert_eq!(mod_inverse(&b(-3), &b(7)).unwrap(), b(2));
        assert!(mod_inverse(&b(2), &b(4)).is_err());
    }

    #[test]
    fn huge_terms_stay_exact() {
        let p: BigInt = "1000000000000000000000000000001".parse().unwrap();
        let q = b(1);
        assert_eq!(euclid_complexity(&p, &q).unwrap(), p);
        let w = euclid_word(&p, &q).unwrap();
        assert_eq!(w.product().first_column(), crate::lattice::Vector::new(p.clone(), 1));
    }
}
