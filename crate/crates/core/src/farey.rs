//! The Farey tessellation through the lens of Γ.
//!
//! An ideal triangle `(m/n, p/q, r/s)` is the hexagon with vertex pairs
//! `±(m,n), ±(p,q), ±(r,s)`. Mediant reflection across a side is a flip, and
//! the Möbius action is the matrix action on vectors, so Farey-line counts
//! become tree distances.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flip_tree::{bfs_ball, distance, geodesic};
use crate::hexagon::Hexagon;
use crate::lattice::{ExtRational, UniMatrix};

/// Three pairwise Farey-adjacent points of `Q ∪ {∞}`, in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "[ExtRational; 3]", into = "[ExtRational; 3]")]
pub struct FareyTriangle {
    vertices: [ExtRational; 3],
}

impl FareyTriangle {
    pub fn new(vertices: [ExtRational; 3]) -> Result<Self> {
        let [a, b, c] = &vertices;
        let distinct = a != b && b != c && a != c;
        if !distinct || !a.is_farey_neighbor(b) || !b.is_farey_neighbor(c) || !a.is_farey_neighbor(c) {
            return Err(Error::NotFareyTriangle(format!("({a}, {b}, {c})")));
        }
        let mut vertices = vertices;
        vertices.sort();
        Ok(FareyTriangle { vertices })
    }

    /// `Δ₀ = (∞, −1, 0)`.
    pub fn base() -> Self {
        hexagon_to_triangle(&Hexagon::standard())
    }

    pub fn vertices(&self) -> &[ExtRational; 3] {
        &self.vertices
    }

    pub fn has_vertex(&self, r: &ExtRational) -> bool {
        self.vertices.contains(r)
    }
}

impl TryFrom<[ExtRational; 3]> for FareyTriangle {
    type Error = Error;
    fn try_from(v: [ExtRational; 3]) -> Result<Self> {
        FareyTriangle::new(v)
    }
}

impl From<FareyTriangle> for [ExtRational; 3] {
    fn from(t: FareyTriangle) -> Self {
        t.vertices
    }
}

impl fmt::Display for FareyTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.vertices;
        write!(f, "({a}, {b}, {c})")
    }
}

fn check_distinct(r1: &ExtRational, r2: &ExtRational) -> Result<()> {
    if r1 == r2 {
        return Err(Error::EqualEndpoints(r1.to_string()));
    }
    Ok(())
}

/// `|mq − np| = 1`.
pub fn is_farey_line(r1: &ExtRational, r2: &ExtRational) -> Result<bool> {
    check_distinct(r1, r2)?;
    Ok(r1.is_farey_neighbor(r2))
}

pub fn triangle_to_hexagon(t: &FareyTriangle) -> Hexagon {
    Hexagon::from_pairs(t.vertices.clone().map(|r| r.to_vector())).expect("Farey triangles are unimodular")
}

pub fn hexagon_to_triangle(w: &Hexagon) -> FareyTriangle {
    let vertices = w.pairs().clone().map(|v| ExtRational::from_vector(&v).expect("hexagon vertices are nonzero"));
    FareyTriangle::new(vertices).expect("admissible hexagons are Farey triangles")
}

/// Reflection across the side `(s1, s2)`: the third vertex is replaced by the
/// other mediant of the side's endpoints.
pub fn mediant_reflect(t: &FareyTriangle, side: (&ExtRational, &ExtRational)) -> Result<FareyTriangle> {
    let (s1, s2) = side;
    if s1 == s2 || !t.has_vertex(s1) || !t.has_vertex(s2) {
        return Err(Error::SideNotInTriangle(format!("({s1}, {s2}) in {t}")));
    }
    let off = t.vertices.iter().find(|v| *v != s1 && *v != s2).expect("three distinct vertices");
    let flipped = triangle_to_hexagon(t).flip_at_vertex(&off.to_vector()).expect("off-side vertex is a vertex pair");
    Ok(hexagon_to_triangle(&flipped))
}

/// `z ↦ (az + b)/(cz + d)`.
pub fn moebius_apply(a: &UniMatrix, r: &ExtRational) -> Result<ExtRational> {
    a.require_sl2()?;
    ExtRational::from_vector(&a.apply(&r.to_vector()))
}

/// Some `B ∈ SL(2,Z)` with `B(∞) = r`.
fn sending_infinity_to(r: &ExtRational) -> UniMatrix {
    UniMatrix::completing(&r.to_vector()).expect("reduced fractions are primitive")
}

/// A triangle with vertex `r`: the image of `Δ₀` under a matrix with `B(∞) = r`.
pub fn fan_triangle(r: &ExtRational) -> FareyTriangle {
    hexagon_to_triangle(&Hexagon::from_matrix(&sending_infinity_to(r)))
}

/// Number of Farey lines separating `r1` from `r2`: after a unimodular map
/// sends `r1` to `∞`, these are the Stern–Brocot intervals strictly containing
/// the image `x` of `r2`.
pub fn separating_lines_oracle(r1: &ExtRational, r2: &ExtRational) -> Result<u64> {
    check_distinct(r1, r2)?;
    let to_infinity = sending_infinity_to(r1).inverse();
    let x = moebius_apply(&to_infinity, r2)?;
    debug_assert!(!x.is_infinite());
    if x.den().is_one() {
        return Ok(0);
    }
    let (p, q) = (x.num(), x.den());
    let k = p.div_floor(q);
    // interval lo/lq < x < hi/hq
    let (mut lo, mut lq) = (k.clone(), BigInt::one());
    let (mut hi, mut hq) = (k + 1, BigInt::one());
    let mut count = 1;
    loop {
        let (mp, mq) = (&lo + &hi, &lq + &hq);
        if &mp == p && &mq == q {
            return Ok(count);
        }
        if &mp * q < p * &mq {
            (lo, lq) = (mp, mq);
        } else {
            (hi, hq) = (mp, mq);
        }
        count += 1;
    }
}

/// Counting distance between two rational points: the Γ-geodesic between
/// their fans, after trimming the parts inside each fan.
pub fn dc_rationals(r1: &ExtRational, r2: &ExtRational) -> Result<u64> {
    check_distinct(r1, r2)?;
    let (v1, v2) = (r1.to_vector(), r2.to_vector());
    let start = triangle_to_hexagon(&fan_triangle(r1));
    let end = triangle_to_hexagon(&fan_triangle(r2));
    let path = geodesic(&start, &end);
    let nodes = path.hexagons();
    let last_in_first = nodes.iter().take_while(|h| h.contains(&v1)).count() - 1;
    let first_in_second = nodes.len() - nodes.iter().rev().take_while(|h| h.contains(&v2)).count();
    Ok(first_in_second.saturating_sub(last_in_first) as u64)
}

/// Lines crossed between the interior of `t` and the point `r`.
pub fn dc_triangle_point(t: &FareyTriangle, r: &ExtRational) -> Result<u64> {
    if t.has_vertex(r) {
        return Err(Error::VertexOfTriangle(r.to_string()));
    }
    let v = r.to_vector();
    let path = geodesic(&triangle_to_hexagon(t), &triangle_to_hexagon(&fan_triangle(r)));
    Ok(path.hexagons().iter().position(|h| h.contains(&v)).expect("path ends in the fan") as u64)
}

/// `d(hex(t), A·hex(t))`.
pub fn dc_operator_displacement(a: &UniMatrix, t: &FareyTriangle) -> Result<u64> {
    a.require_sl2()?;
    let h = triangle_to_hexagon(t);
    Ok(distance(&h, &h.apply(a)))
}

/// Least displacement over the triangles within `radius` flips of `Δ₀`.
pub fn min_operator_displacement(a: &UniMatrix, radius: usize) -> Result<u64> {
    a.require_sl2()?;
    let ball = bfs_ball(&Hexagon::standard(), radius)?;
    Ok(ball.nodes.iter().map(|(h, _)| distance(h, &h.apply(a))).min().expect("balls are nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclid::euclid_complexity_u64;
    use crate::sample::seeded_matrices;

    fn r(s: &str) -> ExtRational {
        s.parse().unwrap()
    }

    fn tri(a: &str, b: &str, c: &str) -> FareyTriangle {
        FareyTriangle::new([r(a), r(b), r(c)]).unwrap()
    }

    fn m(a: i64, b: i64, c: i64, d: i64) -> UniMatrix {
        UniMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn farey_line_examples() {
        assert!(is_farey_line(&r("0"), &r("inf")).unwrap());
        assert!(is_farey_line(&r("1"), &r("inf")).unwrap());
        assert!(!is_farey_line(&r("1"), &r("3")).unwrap());
        assert_eq!(is_farey_line(&r("1/2"), &r("2/4")), Err(Error::EqualEndpoints("1/2".into())));
    }

    #[test]
    fn triangle_validation() {
        assert!(FareyTriangle::new([r("0"), r("1"), r("2")]).is_err());
        assert!(FareyTriangle::new([r("0"), r("0"), r("inf")]).is_err());
        assert_eq!(tri("inf", "0", "-1"), tri("-1", "0", "inf"));
    }

    #[test]
    fn mediant_examples() {
        let t = tri("0", "1", "inf");
        assert_eq!(mediant_reflect(&t, (&r("0"), &r("1"))).unwrap(), tri("0", "1/2", "1"));
        assert_eq!(mediant_reflect(&t, (&r("1"), &r("inf"))).unwrap(), tri("1", "2", "inf"));
        assert_eq!(mediant_reflect(&t, (&r("0"), &r("inf"))).unwrap(), tri("-1", "0", "inf"));
        for side in [(r("0"), r("1")), (r("1"), r("inf")), (r("inf"), r("0"))] {
            let once = mediant_reflect(&t, (&side.0, &side.1)).unwrap();
            assert_eq!(mediant_reflect(&once, (&side.0, &side.1)).unwrap(), t);
        }
        assert!(matches!(mediant_reflect(&t, (&r("0"), &r("2"))), Err(Error::SideNotInTriangle(_))));
    }

    #[test]
    fn hexagon_correspondence() {
        assert_eq!(triangle_to_hexagon(&tri("inf", "-1", "0")), Hexagon::standard());
        assert_eq!(FareyTriangle::base(), tri("inf", "-1", "0"));
        assert_eq!(triangle_to_hexagon(&tri("0", "1", "inf")).to_string(), "[(0,1),(1,0),(1,1)]");
        let ball = bfs_ball(&Hexagon::standard(), 6).unwrap();
        for (h, _) in &ball.nodes {
            let t = hexagon_to_triangle(h);
            assert_eq!(&triangle_to_hexagon(&t), h);
            let [a, b, c] = t.vertices().clone();
            for (s1, s2, off) in [(&a, &b, &c), (&b, &c, &a), (&a, &c, &b)] {
                let reflected = mediant_reflect(&t, (s1, s2)).unwrap();
                assert_eq!(triangle_to_hexagon(&reflected), h.flip_at_vertex(&off.to_vector()).unwrap());
            }
        }
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius_apply(&UniMatrix::identity(), &r("5/2")).unwrap(), r("5/2"));
        assert_eq!(moebius_apply(&m(1, 1, 0, 1), &r("inf")).unwrap(), r("inf"));
        assert_eq!(moebius_apply(&m(0, -1, 1, 0), &r("0")).unwrap(), r("inf"));
        assert_eq!(moebius_apply(&m(0, 1, 1, 0), &r("0")), Err(Error::NotSL2(BigInt::from(-1))));
        for a in seeded_matrices(2, 30, 8) {
            let t = tri("0", "1", "inf");
            let image = FareyTriangle::new(t.vertices().clone().map(|v| moebius_apply(&a, &v).unwrap())).unwrap();
            assert_eq!(triangle_to_hexagon(&image), triangle_to_hexagon(&t).apply(&a));
        }
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(separating_lines_oracle(&r("0"), &r("1")).unwrap(), 0);
        assert_eq!(separating_lines_oracle(&r("0"), &r("2")).unwrap(), 1);
        assert_eq!(separating_lines_oracle(&r("0"), &r("5/2")).unwrap(), 3);
        assert_eq!(separating_lines_oracle(&r("inf"), &r("5/2")).unwrap(), 1);
        assert!(separating_lines_oracle(&r("3"), &r("3")).is_err());
    }

    /// `r` on the arc strictly between `lo` and `hi` that avoids `∞`.
    fn is_between(r: &ExtRational, lo: &ExtRational, hi: &ExtRational) -> bool {
        let (lo, hi) = if lo < hi { (lo, hi) } else { (hi, lo) };
        lo < r && r < hi
    }

    /// Brute-force count of interleaving Farey lines, over all lines whose
    /// endpoints have denominators up to `bound`. Only valid when every
    /// separating line is that small.
    fn interleaving_lines(r1: &ExtRational, r2: &ExtRational, bound: i64) -> u64 {
        let mut pts = vec![ExtRational::infinity()];
        for q in 1..=bound {
            for p in -4 * q..=4 * q {
                if p.gcd(&q) == 1 {
                    pts.push(ExtRational::new(p, q).unwrap());
                }
            }
        }
        let mut count = 0;
        for (i, a) in pts.iter().enumerate() {
            for b in &pts[i + 1..] {
                if a.is_farey_neighbor(b) && ![a, b].contains(&r1) && ![a, b].contains(&r2) {
                    let sep = is_between(r1, a, b) != is_between(r2, a, b);
                    count += u64::from(sep);
                }
            }
        }
        count
    }

    #[test]
    fn oracle_matches_line_enumeration() {
        let pts = ["0", "1", "-1", "1/2", "5/2", "-3/2", "2/3", "inf", "3/5", "-2"];
        for a in pts {
            for b in pts {
                if a != b {
                    assert_eq!(
                        separating_lines_oracle(&r(a), &r(b)).unwrap(),
                        interleaving_lines(&r(a), &r(b), 8),
                        "{a} {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn dc_examples() {
        assert_eq!(dc_rationals(&r("0"), &r("1")).unwrap(), 0);
        assert_eq!(dc_rationals(&r("0"), &r("5/2")).unwrap(), 3);
        assert_eq!(dc_rationals(&r("0"), &r("2")).unwrap(), 1);
        for (p, q) in [(5u64, 2u64), (7, 3), (13, 8), (10, 1)] {
            let x = ExtRational::new(p, q).unwrap();
            assert_eq!(dc_rationals(&r("0"), &x).unwrap(), euclid_complexity_u64(p, q) - 1);
        }
        assert!(dc_rationals(&r("2"), &r("4/2")).is_err());
    }

    #[test]
    fn dc_triangle_examples() {
        let base = FareyTriangle::base();
        assert_eq!(dc_triangle_point(&base, &r("5/2")).unwrap(), 4);
        assert_eq!(dc_triangle_point(&base, &r("1")).unwrap(), 1);
        assert_eq!(dc_triangle_point(&tri("0", "1", "inf"), &r("1/2")).unwrap(), 1);
        assert_eq!(dc_triangle_point(&base, &r("-1")), Err(Error::VertexOfTriangle("-1".into())));
    }

    #[test]
    fn displacement_examples() {
        let base = FareyTriangle::base();
        assert_eq!(dc_operator_displacement(&m(2, 1, 1, 1), &base).unwrap(), 2);
        let a = m(171, 100, -289, -169);
        assert_eq!(dc_operator_displacement(&a, &base).unwrap(), 13);
        assert_eq!(min_operator_displacement(&a, 6).unwrap(), 1);
    }

    #[test]
    fn dc_matches_oracle_small() {
        let mut pts = vec![ExtRational::infinity()];
        for q in 1..=7i64 {
            for p in -2 * q..=2 * q {
                if p.gcd(&q) == 1 {
                    pts.push(ExtRational::new(p, q).unwrap());
                }
            }
        }
        for a in &pts {
            for b in &pts {
                if a != b {
                    assert_eq!(dc_rationals(a, b).unwrap(), separating_lines_oracle(a, b).unwrap(), "{a} {b}");
                }
            }
        }
    }
}
