//! Combinatorial census of the swept special spine of a torus bundle.
//!
//! For a minimal matrix with geodesic `H₀ = W₀, H₁, …, H_c = A·W₀`, the spine
//! holds the fibre together with the θ-curves `L′ = H₁ … L₁ = H_c`. The `c − 1`
//! flips between them are vertices, and each vertex pair of the hexagons,
//! while it lives, sweeps one 2-cell.

use serde::{Deserialize, Serialize};

use crate::conjugacy::{classify, is_minimal, operator_complexity};
use crate::error::{Error, Result};
use crate::euclid::to_u64;
use crate::flip_tree::{matrix_complexity, matrix_path};
use crate::lattice::{UniMatrix, Vector};
use crate::OperatorClass;

/// Vertices of the spine lying in the fibre torus.
const FIBRE_VERTICES: u64 = 6;
/// Triple-line segments lying in the fibre torus.
const FIBRE_EDGES: u64 = 10;
/// 2-cells lying in the fibre torus, all pentagons.
const FIBRE_PENTAGONS: u64 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryLength {
    Exact(u64),
    /// Only a lower bound is established for cells touching the fibre.
    AtLeast(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweptCell {
    /// The vertex pair whose θ-edge sweeps the cell.
    pub pair: Vector,
    /// Interior flip index in `1..c`; `None` means present in `L′`.
    pub birth_flip: Option<u64>,
    /// `None` means still present in `L₁`.
    pub death_flip: Option<u64>,
    pub boundary_length: BoundaryLength,
    pub touches_fiber: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpineCensus {
    pub n_vertices: u64,
    pub n_edges: u64,
    pub n_cells: u64,
    pub fiber_pentagons: u64,
    pub swept_cells: Vec<SweptCell>,
    pub fiber_adjacent_cells: u64,
    /// Claimed count of fibre-adjacent cells: 5 for `±` Jordan powers, else 6.
    pub fiber_adjacent_bound: u64,
    pub pseudominimal: bool,
}

impl SpineCensus {
    pub fn fiber_adjacent_attains_bound(&self) -> bool {
        self.fiber_adjacent_cells == self.fiber_adjacent_bound
    }

    pub fn exact_lengths(&self) -> impl Iterator<Item = u64> + '_ {
        self.swept_cells.iter().filter_map(|c| match c.boundary_length {
            BoundaryLength::Exact(n) => Some(n),
            BoundaryLength::AtLeast(_) => None,
        })
    }
}

/// Census of the swept spine built from a minimal matrix with `c(𝒜) > 0`.
pub fn spine_census(a: &UniMatrix) -> Result<SpineCensus> {
    a.require_sl2()?;
    if !is_minimal(a)? {
        let c_matrix = to_u64(&matrix_complexity(a)?);
        return Err(Error::NotMinimalMatrix { c_matrix, c_operator: operator_complexity(a)? });
    }
    let path = matrix_path(a);
    let c = path.len() as u64;
    if c == 0 {
        return Err(Error::ZeroComplexity);
    }
    let hexes = path.hexagons();

    // lifetimes of the vertex pairs along H₁ … H_c
    let mut swept_cells: Vec<SweptCell> = Vec::new();
    let mut open: Vec<(Vector, Option<u64>)> = hexes[1].pairs().iter().map(|p| (p.clone(), None)).collect();
    for (i, (removed, added)) in path.flip_labels().into_iter().enumerate().skip(1) {
        let flip = i as u64; // H_i → H_{i+1}
        let at = open.iter().position(|(p, _)| *p == removed).expect("removed pair is alive");
        let (pair, birth_flip) = open.swap_remove(at);
        swept_cells.push(cell(pair, birth_flip, Some(flip)));
        open.push((added, Some(flip)));
    }
    swept_cells.extend(open.into_iter().map(|(pair, birth)| cell(pair, birth, None)));
    swept_cells.sort_by_key(|cell| (cell.birth_flip.map_or(0, |b| b), cell.death_flip.map_or(u64::MAX, |d| d)));

    let fiber_adjacent_cells = swept_cells.iter().filter(|cell| cell.touches_fiber).count() as u64;
    let interior_flips = c - 1;
    let n_vertices = interior_flips + FIBRE_VERTICES;
    // two θ-vertex trajectories, cut by every interior flip
    let n_edges = 2 * (interior_flips + 1) + FIBRE_EDGES;
    let n_cells = swept_cells.len() as u64 + FIBRE_PENTAGONS;

    let jordan = matches!(classify(a)?, OperatorClass::Parabolic { .. });
    // the flip after H_{c-1} → H_c is A·(H₀ → H₁); it undoes the last one iff
    // A·H₁ = H_{c−1}
    let cyclic_ok = hexes[1].apply(a) != hexes[hexes.len() - 2];
    let mut census = SpineCensus {
        n_vertices,
        n_edges,
        n_cells,
        fiber_pentagons: FIBRE_PENTAGONS,
        swept_cells,
        fiber_adjacent_cells,
        fiber_adjacent_bound: if jordan { 5 } else { 6 },
        pseudominimal: false,
    };
    census.pseudominimal = census.exact_lengths().all(|n| n >= 4) && cyclic_ok;
    Ok(census)
}

fn cell(pair: Vector, birth_flip: Option<u64>, death_flip: Option<u64>) -> SweptCell {
    let boundary_length = match (birth_flip, death_flip) {
        // k flips from birth to death inclusive give 2k − 2 sides
        (Some(b), Some(d)) => BoundaryLength::Exact(2 * (d - b)),
        _ => BoundaryLength::AtLeast(4),
    };
    SweptCell {
        pair,
        birth_flip,
        death_flip,
        boundary_length,
        touches_fiber: birth_flip.is_none() || death_flip.is_none(),
    }
}
