//! Inputs for the complexity benchmarks.

use thetaflip_core::{Hexagon, UniMatrix};

/// `[[2,1],[1,1]]^k`, whose complexity grows linearly while the entries grow
/// exponentially.
pub fn golden_power(k: i64) -> UniMatrix {
    UniMatrix::new(2, 1, 1, 1).expect("unimodular").pow(k)
}

/// A non-minimal conjugate of `golden_power(k)`: conjugated by `T^n S`.
pub fn disguised_golden_power(k: i64, n: i64) -> UniMatrix {
    let b = &UniMatrix::t().pow(n) * &UniMatrix::s();
    b.conjugate(&golden_power(k))
}

/// Two hexagons far apart in the flip tree.
pub fn far_hexagons(k: i64) -> (Hexagon, Hexagon) {
    let a = golden_power(k);
    let b = UniMatrix::new(1, k, 0, 1).expect("unimodular");
    (Hexagon::from_matrix(&a), Hexagon::from_matrix(&(&b * &a.inverse())))
}
