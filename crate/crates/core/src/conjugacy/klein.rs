//! Brute-force check that mainstream hexagons sit on the boundaries of the
//! convex hulls of lattice points in the four sectors cut out by the
//! eigenlines of a hyperbolic operator.
//!
//! Hulls are computed inside a box, so some hull edges near the box are
//! artefacts. An edge `P → P + g·d` (`d` primitive) is kept only with an exact
//! certificate that its line supports the whole sector: `±d` lie outside the
//! sector and `|det(d, P)| = 1`, so no sector lattice point lies strictly
//! between the line and the origin.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{classify, mainstream};
use crate::error::{Error, Result};
use crate::lattice::{cross_det, q_norm, serde_int, UniMatrix, Vector};
use crate::OperatorClass;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KleinHullReport {
    /// Half-width `N` of the box the hulls were computed in.
    #[serde(with = "serde_int")]
    pub box_bound: BigInt,
    /// Only points with both coordinates in `[−M, M]` are compared.
    #[serde(with = "serde_int")]
    pub check_bound: BigInt,
    /// Certified hull corners inside the check region, sign-normalized.
    pub corners: Vec<Vector>,
    pub boundary_points: usize,
    /// Every certified edge reaching the check region was found.
    pub complete: bool,
    pub leading_on_boundary: bool,
    pub vertices_on_boundary: bool,
    pub boundary_points_are_leading: bool,
    pub boundary_points_are_vertices: bool,
}

impl KleinHullReport {
    /// Mainstream vertices lie on the hull boundaries, and the boundary points
    /// in range are exactly mainstream vertices. `boundary_points_are_leading`
    /// is reported but not required: small corners near the bottom of the
    /// mainstream are vertices without ever being leading.
    pub fn holds(&self) -> bool {
        self.complete && self.leading_on_boundary && self.vertices_on_boundary && self.boundary_points_are_vertices
    }
}

/// Sign of `u + w·√disc` for a positive non-square `disc`.
fn surd_sign(u: &BigInt, w: &BigInt, disc: &BigInt) -> Ordering {
    let zero = BigInt::zero();
    match (u.cmp(&zero), w.cmp(&zero)) {
        (Ordering::Equal, o) | (o, Ordering::Equal) => o,
        (o1, o2) if o1 == o2 => o1,
        (uo, _) => {
            if u * u > w * w * disc {
                uo
            } else {
                uo.reverse()
            }
        }
    }
}

/// `⌊(u + s·√m) / r⌋` for non-square `m > 0`, `r ≠ 0`, `s = ±1`.
fn floor_surd(u: &BigInt, s: i8, m: &BigInt, r: &BigInt) -> BigInt {
    let (u, s, r) = if r.is_negative() { (-u, -s, -r) } else { (u.clone(), s, r.clone()) };
    let root = m.sqrt();
    let numer = if s > 0 { u + root } else { u - root - 1 };
    numer.div_floor(&r)
}

/// Eigenlines spanned by `(2b, m ± √D)` with `m = d − a`, `D = t² − 4`.
struct Eigenlines {
    two_b: BigInt,
    m: BigInt,
    disc: BigInt,
}

impl Eigenlines {
    fn new(a: &UniMatrix) -> Self {
        let t = a.trace();
        Eigenlines { two_b: a.b() * 2, m: a.d() - a.a(), disc: &t * &t - 4 }
    }

    /// Sector index from the signs of `det(r₊, v)` and `det(r₋, v)`.
    fn sector(&self, v: &Vector) -> usize {
        let u = &self.two_b * &v.y - &self.m * &v.x;
        let side = |sigma: i8| {
            let w = if sigma > 0 { -v.x.clone() } else { v.x.clone() };
            surd_sign(&u, &w, &self.disc) == Ordering::Greater
        };
        usize::from(side(1)) * 2 + usize::from(side(-1))
    }

    /// Lattice points of column `x` adjacent to the eigenlines or the box.
    fn column_candidates(&self, x: &BigInt, n: &BigInt) -> Vec<BigInt> {
        if x.is_zero() {
            return vec![BigInt::one(), -BigInt::one(), n.clone(), -n];
        }
        let u = x * &self.m;
        let msq = x * x * &self.disc;
        let mut ys = vec![n.clone(), -n];
        for sigma in [1i8, -1] {
            let s = if x.is_positive() { sigma } else { -sigma };
            let f = floor_surd(&u, s, &msq, &self.two_b);
            ys.push(&f + 1);
            ys.push(f);
        }
        ys.retain(|y| y.abs() <= *n);
        ys
    }
}

/// Counterclockwise convex hull without collinear points.
fn convex_hull(mut pts: Vec<Vector>) -> Vec<Vector> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: &Vector, a: &Vector, b: &Vector| cross_det(&(a - o), &(b - o));
    let mut lower: Vec<Vector> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !turn(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vector> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !turn(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn max_coord(v: &Vector) -> BigInt {
    v.x.abs().max(v.y.abs())
}

struct Boundary {
    points: BTreeSet<Vector>,
    corners: BTreeSet<Vector>,
    complete: bool,
}

/// Certified boundary lattice points within the check bound `m0`, using the
/// box `[−n, n]²`.
fn certified_boundary(eig: &Eigenlines, n: &BigInt, m0: &BigInt) -> Boundary {
    let mut sectors: [Vec<Vector>; 4] = Default::default();
    let mut x = -n.clone();
    while x <= *n {
        for y in eig.column_candidates(&x, n) {
            let v = Vector { x: x.clone(), y };
            sectors[eig.sector(&v)].push(v);
        }
        x += 1;
    }
    let mut out = Boundary { points: BTreeSet::new(), corners: BTreeSet::new(), complete: true };
    for (s, pts) in sectors.into_iter().enumerate() {
        let hull = convex_hull(pts);
        let k = hull.len();
        for i in 0..k {
            let (p, q) = (&hull[i], &hull[(i + 1) % k]);
            let step = q - p;
            // faces the origin: origin strictly right of p → q
            if !cross_det(&step, &-p).is_negative() {
                continue;
            }
            let g = step.content();
            let d = Vector { x: &step.x / &g, y: &step.y / &g };
            let certified = eig.sector(&d) != s && eig.sector(&-&d) != s && cross_det(&d, p).abs().is_one();
            let mut j = BigInt::zero();
            let mut pt = p.clone();
            while j <= g {
                if max_coord(&pt) <= *m0 {
                    if !certified {
                        out.complete = false;
                    } else {
                        out.points.insert(pt.clone().sign_normalized());
                    }
                }
                pt = &pt + &d;
                j += 1;
            }
            if certified {
                for c in [p, q] {
                    if max_coord(c) <= *m0 {
                        out.corners.insert(c.clone().sign_normalized());
                    }
                }
            }
        }
    }
    out
}

/// Vertices attaining the largest `q_norm` (all three on `W₀`).
fn leading_vertices(h: &crate::hexagon::Hexagon) -> Vec<Vector> {
    let best = h.leading_norm();
    h.pairs().iter().filter(|p| q_norm(p) == best).cloned().collect()
}

pub fn klein_hull_report(a: &UniMatrix) -> Result<KleinHullReport> {
    if classify(a)? != OperatorClass::Hyperbolic {
        return Err(Error::NotHyperbolic(a.trace().abs()));
    }
    let eig = Eigenlines::new(a);

    let window = mainstream(a, 1)?;
    let m0 = window.hexagons().iter().flat_map(|h| h.pairs().iter().map(max_coord)).max().expect("nonempty");

    // every mainstream hexagon whose leading vertex fits in the check region
    let q_cap = &m0 * &m0 * 3;
    let mut k: u32 = 1;
    let extended = loop {
        let line = mainstream(a, k)?;
        if line.first().leading_norm() > q_cap && line.last().leading_norm() > q_cap {
            break line;
        }
        k += 1;
    };
    let leading: BTreeSet<Vector> = extended.hexagons().iter().flat_map(leading_vertices).collect();
    let vertices: BTreeSet<Vector> = extended.hexagons().iter().flat_map(|h| h.pairs().iter().cloned()).collect();

    let doubled: BigInt = &m0 * 2;
    let mut n = doubled.max(BigInt::from(4));
    let mut boundary = certified_boundary(&eig, &n, &m0);
    for _ in 0..6 {
        if boundary.complete {
            break;
        }
        n *= 2;
        boundary = certified_boundary(&eig, &n, &m0);
    }

    let on = |v: &Vector| boundary.points.contains(v);
    let window_hexes = window.hexagons();
    Ok(KleinHullReport {
        leading_on_boundary: window_hexes.iter().all(|h| leading_vertices(h).iter().all(on)),
        vertices_on_boundary: window_hexes.iter().all(|h| h.pairs().iter().all(on)),
        boundary_points_are_leading: boundary.points.iter().all(|p| leading.contains(p)),
        boundary_points_are_vertices: boundary.points.iter().all(|p| vertices.contains(p)),
        boundary_points: boundary.points.len(),
        corners: boundary.corners.into_iter().collect(),
        complete: boundary.complete,
        box_bound: n,
        check_bound: m0,
    })
}

/// Window-1 mainstream vertices lie on the sector hull boundaries, and every
/// boundary point in range is a vertex of some mainstream hexagon.
pub fn klein_hull_check(a: &UniMatrix) -> Result<bool> {
    Ok(klein_hull_report(a)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> UniMatrix {
        UniMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn surd_arithmetic() {
        let b = BigInt::from;
        assert_eq!(surd_sign(&b(2), &b(-1), &b(5)), Ordering::Less);
        assert_eq!(surd_sign(&b(3), &b(-1), &b(5)), Ordering::Greater);
        assert_eq!(surd_sign(&b(-3), &b(1), &b(5)), Ordering::Less);
        assert_eq!(floor_surd(&b(1), 1, &b(5), &b(2)), b(1)); // (1+√5)/2
        assert_eq!(floor_surd(&b(1), -1, &b(5), &b(2)), b(-1));
        assert_eq!(floor_surd(&b(1), 1, &b(5), &b(-2)), b(-2));
        assert_eq!(floor_surd(&b(-7), -1, &b(45), &b(3)), b(-5)); // (−7−6.7)/3
    }

    #[test]
    fn golden_hulls() {
        let r = klein_hull_report(&m(2, 1, 1, 1)).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.vertices_on_boundary && r.boundary_points_are_vertices);
        let fib: Vec<u64> = vec![0, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144];
        for c in &r.corners {
            let (x, y) = (u64::try_from(c.x.abs()).unwrap(), u64::try_from(c.y.abs()).unwrap());
            let consecutive = fib.windows(2).any(|w| (w[0], w[1]) == (x, y) || (w[1], w[0]) == (x, y));
            assert!(consecutive, "corner {c}");
        }
        assert!(r.corners.len() >= 4);
    }

    #[test]
    fn square_has_same_hulls() {
        assert!(klein_hull_check(&m(5, 3, 3, 2)).unwrap());
        assert!(klein_hull_check(&m(-2, -1, -1, -1)).unwrap());
    }

    #[test]
    fn other_hyperbolic_operators() {
        for a in [m(3, 2, 1, 1), m(1, 3, 1, 4), m(4, 1, 3, 1), m(2, 7, 1, 4), m(1, 0, 3, 1) * m(1, 5, 0, 1)] {
            let r = klein_hull_report(&a).unwrap();
            assert!(r.complete && r.leading_on_boundary && r.vertices_on_boundary, "{a}: {r:?}");
            assert!(r.boundary_points_are_vertices && r.holds(), "{a}: {r:?}");
        }
    }

    #[test]
    fn seeded_hyperbolic_sweep() {
        let mut checked = 0;
        for a in crate::sample::seeded_matrices(17, 200, 8) {
            if classify(&a).unwrap() == OperatorClass::Hyperbolic {
                assert!(klein_hull_check(&a).unwrap(), "{a}");
                checked += 1;
            }
        }
        assert!(checked >= 10);
    }

    #[test]
    fn corners_need_not_be_leading() {
        let r = klein_hull_report(&m(0, -1, 1, -4)).unwrap();
        assert!(r.holds());
        assert!(!r.boundary_points_are_leading);
        assert!(r.corners.contains(&Vector::new(1, 0)) && r.corners.contains(&Vector::new(0, 1)));
    }

    #[test]
    fn rejects_non_hyperbolic() {
        assert_eq!(klein_hull_check(&m(1, 1, 0, 1)).unwrap_err(), Error::NotHyperbolic(BigInt::from(2)));
        assert!(klein_hull_check(&m(0, -1, 1, 0)).is_err());
    }
}
