//! Operator complexity `c(𝒜)`: the least `c` over a conjugacy class, realised
//! by hexagons on the mainstream of the operator's action on Γ.

mod klein;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flip_tree::{descend_to_standard, geodesic, matrix_complexity, FlipPath};
use crate::hexagon::Hexagon;
use crate::lattice::{serde_int, UniMatrix};

pub use klein::{klein_hull_check, klein_hull_report, KleinHullReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Conjugacy type of an operator.
///
/// `Parabolic { sign, n }` means conjugate to `sign·[[1,n],[0,1]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OperatorClass {
    Elliptic {
        period: u8,
    },
    Parabolic {
        sign: Sign,
        #[serde(with = "serde_int")]
        n: BigInt,
    },
    Hyperbolic,
}

impl OperatorClass {
    /// Finite order, including `±I`.
    pub fn is_periodic(&self) -> bool {
        matches!(self, OperatorClass::Elliptic { .. })
    }
}

impl fmt::Display for OperatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorClass::Elliptic { period } => write!(f, "elliptic (period {period})"),
            OperatorClass::Parabolic { sign, n } => write!(f, "parabolic ({sign}, n={n})"),
            OperatorClass::Hyperbolic => f.write_str("hyperbolic"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimizationResult {
    /// `B` with `minimal = B⁻¹·A·B`.
    pub conjugator: UniMatrix,
    pub minimal: UniMatrix,
    pub operator_complexity: u64,
}

/// Classification by trace. `±I` count as elliptic of period 1 and 2.
pub fn classify(a: &UniMatrix) -> Result<OperatorClass> {
    a.require_sl2()?;
    let t = a.trace();
    if a.is_scalar() {
        let period = if a.is_identity() { 1 } else { 2 };
        return Ok(OperatorClass::Elliptic { period });
    }
    if t.abs() > BigInt::from(2) {
        return Ok(OperatorClass::Hyperbolic);
    }
    if t.abs() == BigInt::from(2) {
        // εA − I = n·(α,γ)ᵀ(−γ,α) for a conjugator with first column (α,γ)
        let eps = if t.is_positive() { BigInt::one() } else { -BigInt::one() };
        let (nb, nc) = (&eps * a.b(), &eps * a.c());
        let na: BigInt = &eps * a.a() - 1;
        let magnitude = na.gcd(&nb).gcd(&nc);
        let positive = if nb.is_zero() { nc.is_negative() } else { nb.is_positive() };
        let sign = if t.is_positive() { Sign::Plus } else { Sign::Minus };
        let n = if positive { magnitude } else { -magnitude };
        return Ok(OperatorClass::Parabolic { sign, n });
    }
    let period = match i32::try_from(&t).expect("|trace| < 2") {
        0 => 4,
        1 => 6,
        _ => 3,
    };
    Ok(OperatorClass::Elliptic { period })
}

/// The minimality criterion: `c(A) ≤ 1`, or the penultimate hexagon of the
/// geodesic `W₀ → A·W₀` differs from `A·W₁`.
pub fn is_minimal(a: &UniMatrix) -> Result<bool> {
    a.require_sl2()?;
    let down = descend_to_standard(&Hexagon::from_matrix(a));
    let c = down.len();
    if c <= 1 {
        return Ok(true);
    }
    // down = [W_c, W_{c-1}, ..., W_1, W_0]
    let hexes = down.hexagons();
    Ok(hexes[1] != hexes[c - 1].apply(a))
}

/// A hexagon on the mainstream, found from the geodesics out of `A·W₀`.
fn mainstream_hexagon(a: &UniMatrix, class: &OperatorClass) -> Hexagon {
    let w = Hexagon::from_matrix(a);
    if class.is_periodic() {
        // A fixes a vertex or flips an edge of Γ; both sit midway along W₀ → AW₀.
        let path = geodesic(&Hexagon::standard(), &w);
        return path.hexagons()[path.len() / 2].clone();
    }
    let down = descend_to_standard(&w);
    let across = geodesic(&w, &w.apply(a));
    let common = down.hexagons().iter().zip(across.hexagons()).take_while(|(x, y)| x == y).count();
    down.hexagons()[common - 1].clone()
}

/// Conjugates `A` to a minimal matrix; `B = I` when `A` is already minimal.
pub fn minimize(a: &UniMatrix) -> Result<MinimizationResult> {
    let class = classify(a)?;
    let mut conjugator = UniMatrix::identity();
    let mut minimal = a.clone();
    for _ in 0..4 {
        if is_minimal(&minimal)? {
            let c = matrix_complexity(&minimal)?;
            let operator_complexity = u64::try_from(&c).expect("operator complexity fits in u64");
            return Ok(MinimizationResult { conjugator, minimal, operator_complexity });
        }
        let v = mainstream_hexagon(&minimal, &class);
        let [basis, _, _] = v.adjacent_bases();
        minimal = basis.conjugate(&minimal);
        conjugator = &conjugator * &basis;
    }
    unreachable!("a mainstream hexagon gives a minimal matrix for {a}")
}

pub fn operator_complexity(a: &UniMatrix) -> Result<u64> {
    Ok(minimize(a)?.operator_complexity)
}

/// Hexagons of one fundamental domain `[V, A·V)` of the mainstream, or the
/// fixed hexagon when `c(𝒜) = 0`.
fn fundamental_domain(a: &UniMatrix, m: &MinimizationResult) -> Vec<Hexagon> {
    let v = Hexagon::from_matrix(&m.conjugator);
    if m.operator_complexity == 0 {
        return vec![v];
    }
    let mut hexes = geodesic(&v, &v.apply(a)).into_hexagons();
    hexes.pop();
    hexes
}

/// All minimal matrices of the operator, sorted.
pub fn minimal_matrices(a: &UniMatrix) -> Result<Vec<UniMatrix>> {
    let m = minimize(a)?;
    if a.is_scalar() {
        return Ok(vec![a.clone()]);
    }
    let mut out: Vec<UniMatrix> =
        fundamental_domain(a, &m).iter().flat_map(|h| h.adjacent_bases()).map(|b| b.conjugate(a)).collect();
    out.sort();
    out.dedup();
    debug_assert!(out.iter().all(|x| is_minimal(x) == Ok(true)));
    Ok(out)
}

/// Lexicographically least minimal matrix: equal exactly on conjugate
/// matrices.
pub fn conjugacy_key(a: &UniMatrix) -> Result<UniMatrix> {
    Ok(minimal_matrices(a)?.swap_remove(0))
}

pub fn are_conjugate(a: &UniMatrix, b: &UniMatrix) -> Result<bool> {
    Ok(conjugacy_key(a)? == conjugacy_key(b)?)
}

/// The `c(𝒜)·(2k+1)+1` mainstream hexagons from `A^{−k}V` to `A^{k+1}V`.
pub fn mainstream(a: &UniMatrix, window: u32) -> Result<FlipPath> {
    if classify(a)?.is_periodic() {
        return Err(Error::PeriodicOperator);
    }
    let m = minimize(a)?;
    let domain = fundamental_domain(a, &m);
    let k = i64::from(window);
    let mut hexes = Vec::with_capacity(domain.len() * (2 * window as usize + 1) + 1);
    for j in -k..=k {
        let shift = a.pow(j);
        hexes.extend(domain.iter().map(|h| h.apply(&shift)));
    }
    hexes.push(domain[0].apply(&a.pow(k + 1)));
    Ok(FlipPath::new(hexes).expect("translates of a geodesic segment along the axis form a path"))
}

/// `c(A) mod 2`.
pub fn parity(a: &UniMatrix) -> Result<u8> {
    let c = matrix_complexity(a)?;
    Ok(if c.is_even() { 0 } else { 1 })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerLawRow {
    pub k: i64,
    #[serde(with = "serde_int")]
    pub c_matrix: BigInt,
    pub c_operator: u64,
    pub minimal: bool,
    #[serde(with = "serde_int")]
    pub b: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerLawReport {
    pub c_operator: u64,
    pub minimal: bool,
    /// `c(A) − c(𝒜)`.
    #[serde(with = "serde_int")]
    pub b: BigInt,
    pub rows: Vec<PowerLawRow>,
    pub holds: bool,
}

/// Powers `A^k`, `1 ≤ |k| ≤ k_max`: `c(𝒜^k) = |k|c(𝒜)`, minimality is
/// inherited, and `c(A^k) − |k|c(𝒜)` is one even nonnegative constant.
pub fn power_law_check(a: &UniMatrix, k_max: u32) -> Result<PowerLawReport> {
    if classify(a)?.is_periodic() {
        // the quarter-turn already has c(𝒜²) = 0 < 2c(𝒜)
        return Err(Error::PeriodicOperator);
    }
    let c_operator = operator_complexity(a)?;
    let minimal = is_minimal(a)?;
    let b = matrix_complexity(a)? - c_operator;
    let mut rows = Vec::new();
    let mut holds = b.is_even() && !b.is_negative();
    let ks = (1..=i64::from(k_max)).flat_map(|k| [k, -k]);
    for k in ks {
        let p = a.pow(k);
        let c_matrix = matrix_complexity(&p)?;
        let row_c_op = operator_complexity(&p)?;
        let row = PowerLawRow {
            k,
            b: &c_matrix - k.unsigned_abs() * c_operator,
            c_matrix,
            c_operator: row_c_op,
            minimal: is_minimal(&p)?,
        };
        holds &= row.c_operator == k.unsigned_abs() * c_operator && row.minimal == minimal && row.b == b;
        rows.push(row);
    }
    Ok(PowerLawReport { c_operator, minimal, b, rows, holds })
}
