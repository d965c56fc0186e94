use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Mat2;

/// Smith invariants `(d1, d2)` of a 2×2 integer matrix: `d1 | d2`, both
/// nonnegative, and `m` is equivalent over Z to `diag(d1, d2)`.
///
/// For 2×2 matrices `d1` is the gcd of the entries and `d1·d2 = |det|`.
pub fn smith_invariants(m: &Mat2) -> (BigInt, BigInt) {
    let d1 = m.a.gcd(&m.b).gcd(&m.c.gcd(&m.d));
    if d1.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let d2 = m.det().abs() / &d1;
    (d1, d2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::UniMatrix;
    use num_traits::One;
    use proptest::prelude::*;

    /// Row/column elimination to diagonal form, independent of the closed form.
    fn smith_by_elimination(m: &Mat2) -> (BigInt, BigInt) {
        let mut e = [[m.a.clone(), m.b.clone()], [m.c.clone(), m.d.clone()]];
        loop {
            // move a nonzero entry of least magnitude to (0,0)
            let mut best: Option<(usize, usize)> = None;
            for i in 0..2 {
                for j in 0..2 {
                    if !e[i][j].is_zero() && best.is_none_or(|(bi, bj)| e[i][j].abs() < e[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((i, j)) = best else { return (BigInt::zero(), BigInt::zero()) };
            e.swap(0, i);
            for row in e.iter_mut() {
                row.swap(0, j);
            }
            let p = e[0][0].clone();
            let q1 = e[1][0].div_floor(&p);
            let q2 = e[0][1].div_floor(&p);
            let [top, bottom] = &mut e;
            for (b, t) in bottom.iter_mut().zip(top.iter()) {
                *b -= &q1 * t;
            }
            for row in e.iter_mut() {
                let t = &row[1] - &q2 * &row[0];
                row[1] = t;
            }
            if !e[1][0].is_zero() || !e[0][1].is_zero() {
                continue;
            }
            if !(&e[1][1] % &p).is_zero() {
                // fold d into the first row and keep reducing
                let t = &e[0][1] + &e[1][1];
                e[0][1] = t;
                continue;
            }
            return (e[0][0].abs(), e[1][1].abs());
        }
    }

    #[test]
    fn examples() {
        let z = BigInt::zero;
        let o = BigInt::one;
        assert_eq!(smith_invariants(&Mat2::new(0, 0, 0, 0)), (z(), z()));
        assert_eq!(smith_invariants(&Mat2::new(1, 1, 1, 0)), (o(), o()));
        assert_eq!(smith_invariants(&Mat2::new(0, 1, 0, 0)), (o(), z()));
        assert_eq!(smith_invariants(&Mat2::new(2, 4, 6, 8)), (BigInt::from(2), BigInt::from(4)));
    }

    fn st_word() -> impl Strategy<Value = UniMatrix> {
        prop::collection::vec(0u8..3, 0..8).prop_map(|w| {
            w.into_iter().fold(UniMatrix::identity(), |acc, g| {
                let gen = match g {
                    0 => UniMatrix::s(),
                    1 => UniMatrix::t(),
                    _ => UniMatrix::swap(),
                };
                &acc * &gen
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_elimination(a in -40i64..40, b in -40i64..40, c in -40i64..40, d in -40i64..40) {
            let m = Mat2::new(a, b, c, d);
            let (d1, d2) = smith_invariants(&m);
            prop_assert_eq!((d1.clone(), d2.clone()), smith_by_elimination(&m));
            if !d1.is_zero() {
                prop_assert!((&d2 % &d1).is_zero());
            }
        }

        #[test]
        fn invariant_under_unimodular_equivalence(
            u in st_word(), v in st_word(),
            a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30,
        ) {
            let m = Mat2::new(a, b, c, d);
            let umv = &(u.as_mat2() * &m) * v.as_mat2();
            prop_assert_eq!(smith_invariants(&umv), smith_invariants(&m));
        }
    }
}
