//! Exact combinatorial complexity invariants of SL(2,Z) and of the 3-manifolds
//! built from it.
//!
//! * [`euclid`]: Euclid complexity `E(p, q)` and continued fractions.
//! * [`hexagon`], [`flip_tree`]: admissible hexagons and the flip tree Γ, with
//!   matrix complexity `c(A) = d(W₀, A·W₀)`.
//! * [`conjugacy`]: operator complexity `c(𝒜)`, minimal matrices, mainstreams.
//! * [`farey`]: the Farey tessellation viewed through Γ.
//! * [`manifolds`]: torus-bundle and lens-space reports.
//! * [`verify`]: named verification suites backed by brute-force oracles.

pub mod conjugacy;
pub mod error;
pub mod euclid;
pub mod farey;
pub mod flip_tree;
pub mod hexagon;
pub mod lattice;
pub mod manifolds;
pub mod sample;
pub mod verify;

pub use conjugacy::{MinimizationResult, OperatorClass};
pub use error::{Error, Result};
pub use euclid::{euclid_complexity, ContinuedFraction};
pub use farey::FareyTriangle;
pub use flip_tree::{distance, geodesic, matrix_complexity, FlipPath};
pub use hexagon::Hexagon;
pub use lattice::{cross_det, q_norm, smith_invariants, ExtRational, Mat2, UniMatrix, Vector};
pub use manifolds::{LensReport, SpineCensus, TorusBundleReport};
