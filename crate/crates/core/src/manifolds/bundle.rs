//! Torus bundles over the circle.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::census::{spine_census, SpineCensus};
use crate::conjugacy::{classify, conjugacy_key, minimize};
use crate::error::Result;
use crate::flip_tree::matrix_complexity;
use crate::lattice::{serde_int, smith_invariants, UniMatrix};
use crate::OperatorClass;

/// `H₁(T_A; Z) = Z^betti ⊕ ⊕ Z/t` for `t` in `torsion`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub betti: u32,
    #[serde(with = "serde_int::vec")]
    pub torsion: Vec<BigInt>,
}

impl Homology {
    /// Complexity lower bound `b₁ − 1` from the face count of a special spine.
    pub fn complexity_lower_bound(&self) -> u64 {
        u64::from(self.betti).saturating_sub(1)
    }
}

impl std::fmt::Display for Homology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".into()),
            n => parts.push(format!("Z^{n}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// First homology of the torus bundle with monodromy `a`, from the Smith
/// form of `a − I`. The circle direction adds one free summand.
pub fn first_homology(a: &UniMatrix) -> Result<Homology> {
    a.require_sl2()?;
    let (d1, d2) = smith_invariants(&a.as_mat2().sub_identity());
    let mut betti = 1;
    let mut torsion = Vec::new();
    for d in [d1, d2] {
        if d.is_zero() {
            betti += 1;
        } else if !d.is_one() {
            torsion.push(d);
        }
    }
    Ok(Homology { betti, torsion })
}

/// Least conjugacy key over `A`, `A⁻¹` and their conjugates by the
/// orientation-reversing swap, as text. Two bundles are homeomorphic iff the
/// keys agree.
pub fn bundle_homeo_key(a: &UniMatrix) -> Result<String> {
    a.require_sl2()?;
    let swap = UniMatrix::swap();
    let inverse = a.inverse();
    let candidates = [a.clone(), inverse.clone(), swap.conjugate(a), swap.conjugate(&inverse)];
    let mut keys = candidates.iter().map(conjugacy_key).collect::<Result<Vec<_>>>()?;
    keys.sort();
    Ok(keys.swap_remove(0).to_string())
}

pub fn bundles_homeomorphic(a: &UniMatrix, b: &UniMatrix) -> Result<bool> {
    Ok(bundle_homeo_key(a)? == bundle_homeo_key(b)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperBoundSource {
    /// Spine swept by the flips of a minimal matrix, `c(𝒜) + 5` vertices.
    SweptSpine,
    /// Explicit 6-vertex spine for the flat bundles.
    SixVertexSpine,
}

impl std::fmt::Display for UpperBoundSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            UpperBoundSource::SweptSpine => "swept_spine",
            UpperBoundSource::SixVertexSpine => "six_vertex_spine",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusBundleReport {
    pub input_matrix: UniMatrix,
    pub operator_class: OperatorClass,
    #[serde(with = "serde_int")]
    pub c_matrix: BigInt,
    pub c_operator: u64,
    pub minimal_matrix: UniMatrix,
    pub conjectured_complexity: u64,
    pub upper_bound_source: UpperBoundSource,
    pub homology: Homology,
    pub lower_bound_homology: u64,
    pub homeo_key: String,
    /// Present when `c(𝒜) > 0`.
    pub census: Option<SpineCensus>,
    /// Fibre part of the 6-vertex spine when `c(𝒜) = 0`.
    pub flat_spine: Option<String>,
}

pub fn torus_bundle_report(a: &UniMatrix) -> Result<TorusBundleReport> {
    a.require_sl2()?;
    let operator_class = classify(a)?;
    let minimized = minimize(a)?;
    let c_operator = minimized.operator_complexity;
    let homology = first_homology(a)?;
    let (census, flat_spine, upper_bound_source) = if c_operator > 0 {
        (Some(spine_census(&minimized.minimal)?), None, UpperBoundSource::SweptSpine)
    } else {
        (None, Some(flat_spine_description(&operator_class).to_string()), UpperBoundSource::SixVertexSpine)
    };
    Ok(TorusBundleReport {
        input_matrix: a.clone(),
        operator_class,
        c_matrix: matrix_complexity(a)?,
        c_operator,
        minimal_matrix: minimized.minimal,
        conjectured_complexity: (c_operator + 5).max(6),
        upper_bound_source,
        lower_bound_homology: homology.complexity_lower_bound(),
        homology,
        homeo_key: bundle_homeo_key(a)?,
        census,
        flat_spine,
    })
}

/// The `c(𝒜) = 0` classes are exactly the elliptic ones of period 1, 2, 3 or 6.
fn flat_spine_description(class: &OperatorClass) -> &'static str {
    match class {
        OperatorClass::Elliptic { period: 1 } => "fibre part: 3 orientable annuli, 3 edges",
        OperatorClass::Elliptic { period: 2 } => "fibre part: 3 nonorientable annuli, 1 edge",
        OperatorClass::Elliptic { period: 6 } => "fibre part: 1 nonorientable annulus, 1 edge",
        OperatorClass::Elliptic { period: 3 } => "fibre part: 1 orientable annulus, 2 edges",
        other => unreachable!("{other} has positive complexity"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> UniMatrix {
        UniMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn homology_examples() {
        let h = first_homology(&UniMatrix::identity()).unwrap();
        assert_eq!((h.betti, h.torsion.len(), h.complexity_lower_bound()), (3, 0, 2));
        assert_eq!(h.to_string(), "Z^3");
        let h = first_homology(&m(1, 1, 0, 1)).unwrap();
        assert_eq!((h.betti, h.torsion.len(), h.complexity_lower_bound()), (2, 0, 1));
        let h = first_homology(&m(2, 1, 1, 1)).unwrap();
        assert_eq!(h.to_string(), "Z");
        assert_eq!(h.complexity_lower_bound(), 0);
        let h = first_homology(&m(-1, 0, 0, -1)).unwrap();
        assert_eq!(h.to_string(), "Z + Z/2 + Z/2");
        let h = first_homology(&m(1, 5, 0, 1)).unwrap();
        assert_eq!(h.to_string(), "Z^2 + Z/5");
    }

    #[test]
    fn homeomorphism_examples() {
        assert!(bundles_homeomorphic(&m(1, 1, 0, 1), &m(1, 0, 1, 1)).unwrap());
        assert!(!bundles_homeomorphic(&m(1, 1, 0, 1), &m(1, 2, 0, 1)).unwrap());
        assert!(bundles_homeomorphic(&m(2, 1, 1, 1), &m(1, 1, 1, 2)).unwrap());
        assert!(bundles_homeomorphic(&m(2, 1, 1, 1), &m(2, 1, 1, 1).inverse()).unwrap());
        assert!(bundles_homeomorphic(&m(0, -1, 1, 0), &m(0, 1, -1, 0)).unwrap());
        assert!(!bundles_homeomorphic(&m(0, -1, 1, 1), &m(0, -1, 1, -1)).unwrap());
    }

    #[test]
    fn flat_bundles_report_six() {
        for a in
            [UniMatrix::identity(), m(-1, 0, 0, -1), m(0, -1, 1, 1), m(1, -1, 1, 0), m(-1, -1, 1, 0), m(0, 1, -1, -1)]
        {
            let report = torus_bundle_report(&a).unwrap();
            assert_eq!(report.c_operator, 0);
            assert_eq!(report.conjectured_complexity, 6);
            assert_eq!(report.upper_bound_source, UpperBoundSource::SixVertexSpine);
            assert!(report.census.is_none() && report.flat_spine.is_some());
        }
    }

    #[test]
    fn swept_reports() {
        let report = torus_bundle_report(&m(1, 1, 0, 1)).unwrap();
        assert_eq!(report.conjectured_complexity, 6);
        assert_eq!(report.upper_bound_source, UpperBoundSource::SweptSpine);
        let report = torus_bundle_report(&m(2, 1, 1, 1)).unwrap();
        assert_eq!(report.conjectured_complexity, 7);
        assert_eq!(report.census.unwrap().n_vertices, 7);
        let report = torus_bundle_report(&m(171, 100, -289, -169)).unwrap();
        assert_eq!(report.c_matrix, BigInt::from(13));
        assert_eq!(report.c_operator, 1);
        assert_eq!(report.census.unwrap().n_vertices, 6);
        let report = torus_bundle_report(&m(2, 1, 1, 1).pow(3)).unwrap();
        assert_eq!(report.conjectured_complexity, 11);
    }

    #[test]
    fn report_round_trips_through_json() {
        let report = torus_bundle_report(&m(5, 3, 3, 2)).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: TorusBundleReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);
    }
}
