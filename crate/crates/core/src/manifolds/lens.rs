//! Lens spaces `L(p, q)`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::{euclid_complexity_u64, mod_inverse_u64};
use crate::flip_tree::descent_step;
use crate::hexagon::Hexagon;
use crate::lattice::{UniMatrix, Vector};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LensReport {
    pub p: u64,
    pub q: u64,
    pub canonical_q: u64,
    pub euclid: u64,
    pub conjectured_complexity: u64,
    /// `p ≤ 3`: S³-like spaces of complexity 0 outside the `E − 3` formula.
    pub special_small_space: bool,
    pub gluing_matrix: UniMatrix,
    pub twist_distance: u64,
    pub spine_vertices: u64,
}

fn validate(p: u64, q: u64) -> Result<()> {
    if p < 2 || q == 0 || q >= p {
        return Err(Error::InvalidRange(format!("need 0 < q < p, got p={p}, q={q}")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime(p.into(), q.into()));
    }
    Ok(())
}

/// Least `q′` with `L(p, q′) ≅ L(p, q)`: the minimum over `±q^{±1} mod p`.
pub fn lens_normalize(p: u64, q: u64) -> Result<u64> {
    validate(p, q)?;
    let inv = mod_inverse_u64(q, p);
    Ok([q, p - q, inv, p - inv].into_iter().min().expect("four candidates"))
}

pub fn lens_homeomorphic(p: u64, q: u64, p2: u64, q2: u64) -> Result<bool> {
    let (n1, n2) = (lens_normalize(p, q)?, lens_normalize(p2, q2)?);
    Ok(p == p2 && n1 == n2)
}

/// Gluing matrix `[[s, p], [r, q]]` with `qs − pr = 1`, `s = q⁻¹ mod p`.
/// For `q = 1` this forces `r = 0`.
pub fn lens_gluing_matrix(p: u64, q: u64) -> Result<UniMatrix> {
    validate(p, q)?;
    let s = mod_inverse_u64(q, p);
    let r = (q * s - 1) / p;
    UniMatrix::sl2(s, p, r, q)
}

/// The B-line is the fan `{(0,1), (1,n−1), (1,n)} = BⁿW₀` of the vector
/// `(0,1)`. Returns the flip distance from `w` to that fan and the index `n`
/// of the nearest fan hexagon.
fn project_to_b_line(w: &Hexagon) -> (u64, i64) {
    let axis = Vector::new(0, 1);
    let mut current = w.clone();
    let mut steps = 0;
    while !current.contains(&axis) {
        current = descent_step(&current).expect("descent reaches W₀, which contains (0,1)");
        steps += 1;
    }
    let n = current
        .pairs()
        .iter()
        .filter(|v| **v != axis)
        .map(|v| {
            let y = if v.x < 0.into() { -&v.y } else { v.y.clone() };
            i64::try_from(y).expect("fan index fits in i64")
        })
        .max()
        .expect("two other pairs");
    (steps, n)
}

fn twist_window_min(a: &UniMatrix, n: i64) -> u64 {
    let b = UniMatrix::new(1, 0, 1, 1).expect("unimodular");
    let w0 = Hexagon::standard();
    (-n..=n)
        .map(|n1| {
            // C^{n₁}AW₀ = A·B^{n₁}W₀
            let x = w0.apply(&(a * &b.pow(n1)));
            let (steps, m) = project_to_b_line(&x);
            let outside = if m > n {
                m - n
            } else if m < -n {
                -n - m
            } else {
                0
            };
            steps + outside as u64
        })
        .min()
        .expect("nonempty window")
}

/// `min d(B^{n₀}W₀, C^{n₁}AW₀)` over the window `|n₀|, |n₁| ≤ N`, with `N`
/// doubling from `E(p, q)` until the minimum repeats.
pub fn lens_twist_distance(p: u64, q: u64) -> Result<u64> {
    let a = lens_gluing_matrix(p, q)?;
    let mut n = euclid_complexity_u64(p, q).max(1) as i64;
    let mut best = twist_window_min(&a, n);
    loop {
        n *= 2;
        let next = twist_window_min(&a, n);
        if next == best {
            return Ok(best);
        }
        best = next;
    }
}

pub fn lens_report(p: u64, q: u64) -> Result<LensReport> {
    let canonical_q = lens_normalize(p, q)?;
    let euclid = euclid_complexity_u64(p, q);
    let special_small_space = p <= 3;
    let spine_vertices = euclid.saturating_sub(3);
    Ok(LensReport {
        p,
        q,
        canonical_q,
        euclid,
        conjectured_complexity: if special_small_space { 0 } else { spine_vertices },
        special_small_space,
        gluing_matrix: lens_gluing_matrix(p, q)?,
        twist_distance: lens_twist_distance(p, q)?,
        spine_vertices,
    })
}
