//! Admissible lattice hexagons, the combinatorial stand-ins for isotopy
//! classes of θ-curves on the torus.
//!
//! A centrally symmetric hexagon is determined by its three vertex pairs
//! `±u, ±v, ±w`. Admissibility means every two non-opposite vertices span a
//! unimodular basis, equivalently one pair is the sum of the other two up to
//! signs. We store the three sign-normalized representatives in sorted order,
//! so equal hexagons are structurally equal.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{cross_det, q_norm, UniMatrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Vector; 3]", into = "[Vector; 3]")]
pub struct Hexagon {
    pairs: [Vector; 3],
}

/// Checks the unimodular-triangle condition on three vertex pairs in any
/// order and with any signs. Zero or repeated vectors give `false`.
pub fn is_admissible(candidate: &[Vector; 3]) -> bool {
    let [a, b, c] = candidate;
    if a.is_zero() || b.is_zero() || c.is_zero() {
        return false;
    }
    cross_det(a, b).abs().is_one() && cross_det(b, c).abs().is_one() && cross_det(a, c).abs().is_one()
}

impl TryFrom<[Vector; 3]> for Hexagon {
    type Error = Error;

    fn try_from(pairs: [Vector; 3]) -> Result<Self> {
        Hexagon::from_pairs(pairs)
    }
}

impl From<Hexagon> for [Vector; 3] {
    fn from(h: Hexagon) -> Self {
        h.pairs
    }
}

impl Hexagon {
    /// `W₀`, with vertices `±(1,0), ±(0,1), ±(1,−1)`.
    pub fn standard() -> Self {
        Hexagon::canonical([Vector::new(1, 0), Vector::new(0, 1), Vector::new(1, -1)])
    }

    fn canonical(pairs: [Vector; 3]) -> Self {
        let mut pairs = pairs.map(Vector::sign_normalized);
        pairs.sort();
        debug_assert!(is_admissible(&pairs));
        Hexagon { pairs }
    }

    /// Hexagon with vertex pairs `±x, ±z, ±(x+z)`.
    pub fn from_pair(x: &Vector, z: &Vector) -> Result<Self> {
        let det = cross_det(x, z);
        if !det.abs().is_one() {
            return Err(Error::NotUnimodularPair(det.abs()));
        }
        Ok(Hexagon::canonical([x.clone(), z.clone(), x + z]))
    }

    pub fn from_pairs(pairs: [Vector; 3]) -> Result<Self> {
        if !is_admissible(&pairs) {
            let [a, b, _] = &pairs;
            return Err(Error::NotUnimodularPair(cross_det(a, b).abs()));
        }
        Ok(Hexagon::canonical(pairs))
    }

    /// The image `B·W₀` of the standard hexagon.
    pub fn from_matrix(b: &UniMatrix) -> Self {
        Hexagon::standard().apply(b)
    }

    /// Sign-normalized vertex representatives, sorted.
    pub fn pairs(&self) -> &[Vector; 3] {
        &self.pairs
    }

    pub fn is_standard(&self) -> bool {
        *self == Hexagon::standard()
    }

    /// `true` if `±v` is a vertex pair.
    pub fn contains(&self, v: &Vector) -> bool {
        self.pairs.iter().any(|p| p.same_line(v))
    }

    /// Index of the vertex pair with the largest `q_norm`.
    fn leading_index(&self) -> usize {
        if self.is_standard() {
            return 2; // (1,0) sorts last in W₀
        }
        let norms = self.pairs.clone().map(|p| q_norm(&p));
        let mut best = 0;
        for i in 1..3 {
            if norms[i] > norms[best] {
                best = i;
            }
        }
        debug_assert!((0..3).filter(|&i| norms[i] == norms[best]).count() == 1);
        best
    }

    /// The sign-normalized vertex farthest from the origin in the hexagonal
    /// norm. Unique up to sign except on `W₀`, where `(1,0)` is returned.
    pub fn leading_vertex(&self) -> &Vector {
        &self.pairs[self.leading_index()]
    }

    pub fn leading_norm(&self) -> BigInt {
        q_norm(self.leading_vertex())
    }

    /// Flip at vertex pair `index`: with `±σ, ±μ` the other two pairs, the pair
    /// `±(σ±μ)` is replaced by `±(σ∓μ)`.
    pub fn flip(&self, index: usize) -> Hexagon {
        let v = &self.pairs[index];
        let sigma = &self.pairs[(index + 1) % 3];
        let mu = &self.pairs[(index + 2) % 3];
        let sum = sigma + mu;
        let replacement = if v.same_line(&sum) { sigma - mu } else { sum };
        Hexagon::canonical([sigma.clone(), mu.clone(), replacement])
    }

    /// The three flip neighbours, in the order of [`Hexagon::pairs`].
    pub fn flips(&self) -> [Hexagon; 3] {
        [self.flip(0), self.flip(1), self.flip(2)]
    }

    /// Flip at the pair `±v`, if it is a vertex pair.
    pub fn flip_at_vertex(&self, v: &Vector) -> Option<Hexagon> {
        self.pairs.iter().position(|p| p.same_line(v)).map(|i| self.flip(i))
    }

    /// If `other` is a flip neighbour, returns `(removed, added)` vertex pairs.
    pub fn flip_difference(&self, other: &Hexagon) -> Option<(Vector, Vector)> {
        let removed: Vec<&Vector> = self.pairs.iter().filter(|p| !other.contains(p)).collect();
        let added: Vec<&Vector> = other.pairs.iter().filter(|p| !self.contains(p)).collect();
        match (removed.as_slice(), added.as_slice()) {
            ([r], [a]) if self.flip_at_vertex(r).as_ref() == Some(other) => Some(((*r).clone(), (*a).clone())),
            _ => None,
        }
    }

    /// `A·W`.
    pub fn apply(&self, a: &UniMatrix) -> Hexagon {
        Hexagon::canonical(self.pairs.clone().map(|p| a.apply(&p)))
    }

    /// The six vertices in counterclockwise order, starting from a vertex `X`
    /// such that consecutive vertices satisfy `Y = X + Z`.
    pub fn vertices_ccw(&self) -> [Vector; 6] {
        let [a, b, c] = &self.pairs;
        // choose x, z with c = ±(x + z)
        let (x, z) = if c.same_line(&(a + b)) { (a.clone(), b.clone()) } else { (a.clone(), -b) };
        let (x, z) = if cross_det(&x, &z).is_positive() { (x, z) } else { (z, x) };
        let y = &x + &z;
        [x.clone(), y.clone(), z.clone(), -x, -y, -z]
    }

    /// The three positively oriented bases `(Xᵢ, Xᵢ₊₁)` of consecutive
    /// vertices, one from each centrally symmetric pair of bases.
    pub fn adjacent_bases(&self) -> [UniMatrix; 3] {
        let v = self.vertices_ccw();
        [0, 1, 2]
            .map(|i| UniMatrix::from_columns(&v[i], &v[i + 1]).expect("consecutive hexagon vertices are unimodular"))
    }

    /// Lattice points of the closed hexagon other than its six vertices and the
    /// origin. Empty for every admissible hexagon; brute-force scan over the
    /// bounding box, so only for small hexagons.
    pub fn extra_lattice_points(&self) -> Vec<Vector> {
        let verts = self.vertices_ccw();
        let max_x = verts.iter().map(|v| v.x.abs()).max().unwrap_or_default();
        let max_y = verts.iter().map(|v| v.y.abs()).max().unwrap_or_default();
        let mut extra = Vec::new();
        let mut x = -max_x.clone();
        while x <= max_x {
            let mut y = -max_y.clone();
            while y <= max_y {
                let p = Vector { x: x.clone(), y: y.clone() };
                let inside =
                    (0..6).all(|i| !cross_det(&(&verts[(i + 1) % 6] - &verts[i]), &(&p - &verts[i])).is_negative());
                if inside && !p.is_zero() && !verts.contains(&p) {
                    extra.push(p);
                }
                y += 1;
            }
            x += 1;
        }
        extra
    }
}

impl fmt::Display for Hexagon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.pairs;
        write!(f, "[{a},{b},{c}]")
    }
}

impl FromStr for Hexagon {
    type Err = Error;

    /// Parses `[(x1,y1),(x2,y2),(x3,y3)]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid hexagon {s:?}, expected [(x1,y1),(x2,y2),(x3,y3)]"));
        let inner = s.trim().strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
        let nums: Vec<BigInt> = inner
            .split(['(', ')', ','])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        if nums.len() != 6 {
            return Err(bad());
        }
        let v = |i: usize| Vector { x: nums[2 * i].clone(), y: nums[2 * i + 1].clone() };
        Hexagon::from_pairs([v(0), v(1), v(2)])
    }
}
