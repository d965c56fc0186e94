//! Torus bundles and lens spaces: conjectured complexities, spine censuses,
//! homology bounds and homeomorphism tests.

mod bundle;
mod census;
mod lens;

pub use bundle::{
    bundle_homeo_key, bundles_homeomorphic, first_homology, torus_bundle_report, Homology, TorusBundleReport,
    UpperBoundSource,
};
pub use census::{spine_census, BoundaryLength, SpineCensus, SweptCell};
pub use lens::{lens_gluing_matrix, lens_homeomorphic, lens_normalize, lens_report, lens_twist_distance, LensReport};
