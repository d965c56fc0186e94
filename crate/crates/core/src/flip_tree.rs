//! The flip tree Γ: admissible hexagons joined by flips.
//!
//! Every hexagon other than `W₀` has exactly one flip that shrinks its leading
//! vertex, so repeatedly taking it is a geodesic to `W₀`. Distances between
//! arbitrary hexagons come from trimming the common tail of two such descents.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{euclid_complexity, euclid_word};
use crate::hexagon::Hexagon;
use crate::lattice::{UniMatrix, Vector};

/// Default cap on [`bfs_ball`] radius.
pub const DEFAULT_BFS_CAP: usize = 12;

/// A path in Γ; consecutive hexagons differ by one flip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipPath {
    hexagons: Vec<Hexagon>,
}

impl FlipPath {
    pub fn single(h: Hexagon) -> Self {
        FlipPath { hexagons: vec![h] }
    }

    /// Validates flip adjacency and simplicity.
    pub fn new(hexagons: Vec<Hexagon>) -> Option<Self> {
        if hexagons.is_empty() {
            return None;
        }
        let adjacent = hexagons.windows(2).all(|w| w[0].flip_difference(&w[1]).is_some());
        let mut seen = std::collections::HashSet::new();
        let simple = hexagons.iter().all(|h| seen.insert(h));
        (adjacent && simple).then_some(FlipPath { hexagons })
    }

    pub fn hexagons(&self) -> &[Hexagon] {
        &self.hexagons
    }

    /// Number of flips.
    pub fn len(&self) -> usize {
        self.hexagons.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn first(&self) -> &Hexagon {
        &self.hexagons[0]
    }

    pub fn last(&self) -> &Hexagon {
        self.hexagons.last().expect("paths are nonempty")
    }

    pub fn reversed(&self) -> FlipPath {
        let mut hexagons = self.hexagons.clone();
        hexagons.reverse();
        FlipPath { hexagons }
    }

    pub fn apply(&self, a: &UniMatrix) -> FlipPath {
        FlipPath { hexagons: self.hexagons.iter().map(|h| h.apply(a)).collect() }
    }

    /// `(removed, added)` vertex pairs of each flip along the path.
    pub fn flip_labels(&self) -> Vec<(Vector, Vector)> {
        self.hexagons
            .windows(2)
            .map(|w| w[0].flip_difference(&w[1]).expect("consecutive hexagons are flip neighbours"))
            .collect()
    }

    pub fn into_hexagons(self) -> Vec<Hexagon> {
        self.hexagons
    }
}

/// The flip that strictly shrinks the leading vertex; `None` at `W₀`.
pub fn descent_step(w: &Hexagon) -> Option<Hexagon> {
    if w.is_standard() {
        return None;
    }
    let lead = w.leading_vertex();
    let next = w.flip_at_vertex(lead).expect("leading vertex is a vertex pair");
    debug_assert!(next.leading_norm() < w.leading_norm(), "descent must shrink {w}");
    Some(next)
}

/// Path from `w` down to `W₀`.
pub fn descend_to_standard(w: &Hexagon) -> FlipPath {
    let mut hexagons = vec![w.clone()];
    while let Some(next) = descent_step(hexagons.last().unwrap()) {
        hexagons.push(next);
    }
    FlipPath { hexagons }
}

/// Indices `(i1, i2)` of the meeting point of two descents to `W₀`.
fn meeting_point(d1: &[Hexagon], d2: &[Hexagon]) -> (usize, usize) {
    let common = d1.iter().rev().zip(d2.iter().rev()).take_while(|(a, b)| a == b).count();
    (d1.len() - common, d2.len() - common)
}

/// Tree distance `d(w1, w2)` in Γ.
pub fn distance(w1: &Hexagon, w2: &Hexagon) -> u64 {
    let d1 = descend_to_standard(w1);
    let d2 = descend_to_standard(w2);
    let (i1, i2) = meeting_point(&d1.hexagons, &d2.hexagons);
    (i1 + i2) as u64
}

/// The unique shortest path from `w1` to `w2`.
pub fn geodesic(w1: &Hexagon, w2: &Hexagon) -> FlipPath {
    let d1 = descend_to_standard(w1).hexagons;
    let d2 = descend_to_standard(w2).hexagons;
    let (i1, i2) = meeting_point(&d1, &d2);
    let mut hexagons: Vec<Hexagon> = d1[..=i1].to_vec();
    hexagons.extend(d2[..i2].iter().rev().cloned());
    FlipPath { hexagons }
}

/// `c(A) = d(W₀, A·W₀)` from the leading vertex `(p, q)` of `A·W₀`:
/// `E(|p|,|q|)` when `pq > 0`, one less when `pq < 0`.
pub fn matrix_complexity(a: &UniMatrix) -> Result<BigInt> {
    a.require_sl2()?;
    let w = Hexagon::from_matrix(a);
    if w.is_standard() {
        return Ok(BigInt::zero());
    }
    let lead = w.leading_vertex();
    let (p, q) = (lead.x.abs(), lead.y.abs());
    assert!(!p.is_zero() && !q.is_zero(), "leading vertex {lead} off W0 has a zero coordinate");
    let e = euclid_complexity(&p, &q)?;
    let c = if lead.x.is_positive() == lead.y.is_positive() { e } else { e - BigInt::one() };
    #[cfg(debug_assertions)]
    if c <= BigInt::from(2_000) {
        debug_assert_eq!(BigInt::from(descend_to_standard(&w).len()), c, "fast path disagrees with descent for {a}");
    }
    Ok(c)
}

/// `c(A)` as the length of the descent from `A·W₀`.
pub fn matrix_complexity_by_descent(a: &UniMatrix) -> Result<u64> {
    a.require_sl2()?;
    Ok(descend_to_standard(&Hexagon::from_matrix(a)).len() as u64)
}

/// Geodesic `W₀ → A·W₀`.
pub fn matrix_path(a: &UniMatrix) -> FlipPath {
    descend_to_standard(&Hexagon::from_matrix(a)).reversed()
}

/// The hexagon whose leading vertex is `(p, q)`, `p > q ≥ 1` coprime, built
/// from the Euclid word: its other pairs are the columns of the word product.
pub fn leading_vertex_hexagon(p: &BigInt, q: &BigInt) -> Result<Hexagon> {
    let b = euclid_word(p, q)?.product();
    Ok(Hexagon::from_matrix(&b))
}

/// Every admissible hexagon `{X, v − X, v}` with leading vertex `v = (p, q)`,
/// by scanning `X = (x, y)` with `det(X, v) = ±1` and `|x| ≤ 2p`. The other
/// pairs have `Q < Q(v) ≤ 3p²` and `Q(x, y) ≥ 3x²/4`, so the scan is exhaustive.
pub fn leading_vertex_candidates(p: i64, q: i64) -> Vec<Hexagon> {
    let v = Vector::new(p, q);
    let mut found: Vec<Hexagon> = Vec::new();
    for x in -2 * p..=2 * p {
        for sign in [1, -1] {
            // x·q − y·p = sign
            let num = x * q - sign;
            if num % p != 0 {
                continue;
            }
            let x_vec = Vector::new(x, num / p);
            let Ok(h) = Hexagon::from_pairs([x_vec.clone(), &v - &x_vec, v.clone()]) else { continue };
            if *h.leading_vertex() == v && !found.contains(&h) {
                found.push(h);
            }
        }
    }
    found
}

/// Breadth-first ball around a hexagon, with the tree edges discovered.
#[derive(Clone, Debug)]
pub struct Ball {
    /// Hexagons in BFS order with their distance from the centre.
    pub nodes: Vec<(Hexagon, usize)>,
    /// `(parent index, child index, removed pair, added pair)`.
    pub edges: Vec<(usize, usize, Vector, Vector)>,
    /// Times a flip landed on an already-seen hexagon other than the parent.
    /// Zero exactly when no cycle was closed.
    pub non_parent_hits: usize,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn distances(&self) -> HashMap<&Hexagon, usize> {
        self.nodes.iter().map(|(h, d)| (h, *d)).collect()
    }
}

/// All hexagons within `radius` flips of `center`; radius capped at `cap`.
pub fn bfs_ball_capped(center: &Hexagon, radius: usize, cap: usize) -> Result<Ball> {
    if radius > cap {
        return Err(Error::RadiusTooLarge { radius, cap });
    }
    let mut index: HashMap<Hexagon, usize> = HashMap::new();
    let mut parent: Vec<Option<usize>> = vec![None];
    let mut ball = Ball { nodes: vec![(center.clone(), 0)], edges: Vec::new(), non_parent_hits: 0 };
    index.insert(center.clone(), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let (h, d) = ball.nodes[i].clone();
        if d == radius {
            continue;
        }
        for (k, f) in h.flips().into_iter().enumerate() {
            match index.get(&f) {
                Some(&j) => {
                    if parent[i] != Some(j) {
                        ball.non_parent_hits += 1;
                    }
                }
                None => {
                    let j = ball.nodes.len();
                    index.insert(f.clone(), j);
                    let added = f.pairs().iter().find(|p| !h.contains(p)).expect("flip adds a pair").clone();
                    ball.edges.push((i, j, h.pairs()[k].clone(), added));
                    ball.nodes.push((f, d + 1));
                    parent.push(Some(i));
                    queue.push_back(j);
                }
            }
        }
    }
    Ok(ball)
}

pub fn bfs_ball(center: &Hexagon, radius: usize) -> Result<Ball> {
    bfs_ball_capped(center, radius, DEFAULT_BFS_CAP)
}

/// `1 + 3(2^r − 1)`, the size of a radius-`r` ball in a trivalent tree.
pub fn trivalent_ball_size(radius: usize) -> usize {
    1 + 3 * ((1usize << radius) - 1)
}

fn dot_node(h: &Hexagon) -> String {
    format!("{h}\\nlead {}", h.leading_vertex())
}

fn dot_escape(s: &str) -> String {
    s.replace('"', "\\\"")
}

/// DOT text for a BFS ball; edges are labelled by the replaced vertex pair.
pub fn ball_to_dot(ball: &Ball) -> String {
    let mut out = String::from("graph ball {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, (h, d)) in ball.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\\nd={d}\"];", dot_escape(&dot_node(h)));
    }
    for (i, j, removed, added) in &ball.edges {
        let _ = writeln!(out, "  n{i} -- n{j} [label=\"{removed}->{added}\"];");
    }
    out.push_str("}\n");
    out
}

/// DOT text for a chain of flip-adjacent hexagons (a geodesic or a mainstream
/// window).
pub fn path_to_dot(name: &str, path: &FlipPath) -> String {
    let mut out = format!("graph {name} {{\n  rankdir=LR;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, h) in path.hexagons().iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(&dot_node(h)));
    }
    for (i, (removed, added)) in path.flip_labels().into_iter().enumerate() {
        let _ = writeln!(out, "  n{i} -- n{} [label=\"{removed}->{added}\"];", i + 1);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> UniMatrix {
        UniMatrix::new(a, b, c, d).unwrap()
    }

    fn v(x: i64, y: i64) -> Vector {
        Vector::new(x, y)
    }

    #[test]
    fn leading_vertex_hexagons_are_unique() {
        for p in 2..=40i64 {
            for q in (1..p).filter(|q| num_integer::gcd(p, *q) == 1) {
                let h = leading_vertex_hexagon(&BigInt::from(p), &BigInt::from(q)).unwrap();
                assert_eq!(*h.leading_vertex(), v(p, q));
                assert_eq!(leading_vertex_candidates(p, q), vec![h.clone()], "({p},{q})");
                let e = crate::euclid::euclid_complexity_u64(p as u64, q as u64);
                assert_eq!(distance(&Hexagon::standard(), &h), e);
            }
        }
    }

    #[test]
    fn descent_examples() {
        let w0 = Hexagon::standard();
        assert_eq!(descend_to_standard(&w0).len(), 0);
        let w = Hexagon::from_pairs([v(1, 0), v(2, 1), v(1, 1)]).unwrap();
        assert_eq!(w.leading_vertex(), &v(2, 1));
        assert_eq!(descend_to_standard(&w).len(), 2);
        let a = m(171, 100, -289, -169);
        assert_eq!(descend_to_standard(&Hexagon::from_matrix(&a)).len(), 13);
    }

    #[test]
    fn descent_is_monotone() {
        let path = descend_to_standard(&Hexagon::from_matrix(&m(171, 100, -289, -169)));
        for w in path.hexagons().windows(2) {
            assert!(w[1].leading_norm() < w[0].leading_norm());
        }
        assert!(FlipPath::new(path.hexagons().to_vec()).is_some());
    }

    #[test]
    fn distance_examples() {
        let w0 = Hexagon::standard();
        assert_eq!(distance(&w0, &w0), 0);
        assert_eq!(distance(&w0, &w0.apply(&m(1, 1, 0, 1))), 1);
        let [f0, f1, f2] = w0.flips();
        assert_eq!(distance(&f0, &f1), 2);
        assert_eq!(distance(&f1, &f2), 2);
    }

    #[test]
    fn geodesic_examples() {
        let w0 = Hexagon::standard();
        assert_eq!(geodesic(&w0, &w0).hexagons(), std::slice::from_ref(&w0));
        let target = Hexagon::from_matrix(&m(2, 1, 1, 1));
        let path = geodesic(&w0, &target);
        assert_eq!(path.len(), 2);
        assert_eq!(path.hexagons()[1], Hexagon::from_pairs([v(1, 0), v(0, 1), v(1, 1)]).unwrap());
        assert_eq!(geodesic(&target, &w0), path.reversed());
        assert!(FlipPath::new(path.hexagons().to_vec()).is_some());
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(matrix_complexity(&m(171, 100, -289, -169)).unwrap(), BigInt::from(13));
        assert_eq!(matrix_complexity(&m(1, 1, 0, 1)).unwrap(), BigInt::from(1));
        assert_eq!(matrix_complexity(&m(0, -1, 1, 1)).unwrap(), BigInt::from(0));
        assert_eq!(matrix_complexity(&m(0, 1, 1, 0)), Err(Error::NotSL2(BigInt::from(-1))));
        assert_eq!(matrix_complexity_by_descent(&m(171, 100, -289, -169)).unwrap(), 13);
    }

    #[test]
    fn ball_examples() {
        let w0 = Hexagon::standard();
        assert_eq!(bfs_ball(&w0, 0).unwrap().len(), 1);
        assert_eq!(bfs_ball(&w0, 1).unwrap().len(), 4);
        let ball = bfs_ball(&w0, 8).unwrap();
        assert_eq!(ball.len(), 766);
        assert_eq!(ball.non_parent_hits, 0);
        assert_eq!(bfs_ball(&w0, 13).unwrap_err(), Error::RadiusTooLarge { radius: 13, cap: 12 });
    }

    #[test]
    fn ball_distances_match_descent() {
        let w0 = Hexagon::standard();
        let ball = bfs_ball(&w0, 7).unwrap();
        for (h, d) in &ball.nodes {
            assert_eq!(distance(&w0, h), *d as u64);
        }
        // balls around another centre, pairwise
        let c = Hexagon::from_matrix(&m(2, 1, 1, 1));
        let ball = bfs_ball(&c, 4).unwrap();
        for (h, d) in &ball.nodes {
            assert_eq!(distance(&c, h), *d as u64);
            assert_eq!(distance(h, &c), *d as u64);
        }
    }

    #[test]
    fn dot_output() {
        let w0 = Hexagon::standard();
        let dot = ball_to_dot(&bfs_ball(&w0, 1).unwrap());
        assert_eq!(dot.matches(" -- ").count(), 3);
        assert_eq!(dot.matches("[label=").count(), 7);
        let path = geodesic(&w0, &Hexagon::from_matrix(&m(2, 1, 1, 1)));
        let dot = path_to_dot("geodesic", &path);
        assert_eq!(dot.matches(" -- ").count(), 2);
        assert!(dot.starts_with("graph geodesic {"));
        let dot = path_to_dot("single", &FlipPath::single(w0));
        assert_eq!(dot.matches(" -- ").count(), 0);
        assert_eq!(dot.matches("n0 [label=").count(), 1);
    }
}
