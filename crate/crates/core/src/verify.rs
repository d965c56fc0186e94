//! Named verification suites: each compares fast paths against brute-force
//! oracles or checks stated identities, and reports one row per check.
//!
//! Everything is deterministic for a fixed seed.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conjugacy::{are_conjugate, is_minimal, minimize, operator_complexity, parity, power_law_check};
use crate::error::{Error, Result};
use crate::euclid::{euclid_complexity_u64, inverse_symmetry_scan, oracle_agrees};
use crate::farey::{dc_rationals, dc_triangle_point, moebius_apply, separating_lines_oracle, FareyTriangle};
use crate::flip_tree::{
    bfs_ball, distance, leading_vertex_candidates, leading_vertex_hexagon, matrix_complexity, trivalent_ball_size,
};
use crate::hexagon::Hexagon;
use crate::lattice::{ExtRational, UniMatrix};
use crate::manifolds::{
    first_homology, lens_normalize, lens_report, lens_twist_distance, spine_census, torus_bundle_report,
};
use crate::sample::{random_word, seeded_matrices, seeded_minimal_hyperbolic, seeded_non_periodic};

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WorkedExample,
    Golden,
    FlatBundles,
    InverseSymmetry,
    Ball,
    LeadingVertex,
    GroupLaws,
    PowerLaw,
    Farey,
    Lens,
    Census,
    Homology,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::WorkedExample,
        Suite::Golden,
        Suite::FlatBundles,
        Suite::InverseSymmetry,
        Suite::Ball,
        Suite::LeadingVertex,
        Suite::GroupLaws,
        Suite::PowerLaw,
        Suite::Farey,
        Suite::Lens,
        Suite::Census,
        Suite::Homology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WorkedExample => "worked-example",
            Suite::Golden => "golden",
            Suite::FlatBundles => "flat-bundles",
            Suite::InverseSymmetry => "inverse-symmetry",
            Suite::Ball => "ball",
            Suite::LeadingVertex => "leading-vertex",
            Suite::GroupLaws => "group-laws",
            Suite::PowerLaw => "power-law",
            Suite::Farey => "farey",
            Suite::Lens => "lens",
            Suite::Census => "census",
            Suite::Homology => "homology",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// Overrides for the default sweep sizes. `p_max` bounds the main sweep of a
/// suite, `radius` the BFS oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub p_max: Option<u64>,
    pub seed: u64,
    pub radius: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { p_max: None, seed: DEFAULT_SEED, radius: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub rows: Vec<CheckRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|row| row.passed)
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let mark = if row.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark}  {:<16} {}  [{}]", self.suite.name(), row.check, row.detail)?;
        }
        Ok(())
    }
}

fn row(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> CheckRow {
    CheckRow { check: check.into(), passed, detail: detail.into() }
}

/// Tally of a sweep: how many cases ran and the first failing case.
struct Sweep {
    cases: u64,
    failures: u64,
    first: Option<String>,
}

impl Sweep {
    fn new() -> Self {
        Sweep { cases: 0, failures: 0, first: None }
    }

    fn check(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            self.first.get_or_insert_with(case);
        }
    }

    fn into_row(self, check: &str) -> CheckRow {
        let detail = match &self.first {
            None => format!("{} cases", self.cases),
            Some(case) => format!("{} of {} cases fail, first {case}", self.failures, self.cases),
        };
        row(check, self.failures == 0, detail)
    }
}

fn m(a: i64, b: i64, c: i64, d: i64) -> UniMatrix {
    UniMatrix::new(a, b, c, d).expect("literal is unimodular")
}

fn coprime_pairs(p_max: u64) -> impl Iterator<Item = (u64, u64)> {
    (2..=p_max).flat_map(|p| (1..p).filter(move |q| p.gcd(q) == 1).map(move |q| (p, q)))
}

pub fn run_suite(suite: Suite, options: &VerifyOptions) -> Result<SuiteReport> {
    let rows = match suite {
        Suite::WorkedExample => worked_example()?,
        Suite::Golden => golden()?,
        Suite::FlatBundles => flat_bundles()?,
        Suite::InverseSymmetry => inverse_symmetry(options.p_max.unwrap_or(500))?,
        Suite::Ball => ball(options.radius.unwrap_or(8))?,
        Suite::LeadingVertex => leading_vertex(options.p_max.unwrap_or(60))?,
        Suite::GroupLaws => group_laws(options.seed)?,
        Suite::PowerLaw => power_law(options.seed)?,
        Suite::Farey => farey(options.p_max.unwrap_or(100), options.seed)?,
        Suite::Lens => lens(options.p_max.unwrap_or(50))?,
        Suite::Census => census(options.seed)?,
        Suite::Homology => homology(options.seed)?,
    };
    Ok(SuiteReport { suite, rows })
}

pub fn run_all(options: &VerifyOptions) -> Result<Vec<SuiteReport>> {
    Suite::ALL.into_iter().map(|suite| run_suite(suite, options)).collect()
}

fn worked_example() -> Result<Vec<CheckRow>> {
    let a = m(171, 100, -289, -169);
    let t = UniMatrix::t();
    let c_a = matrix_complexity(&a)?;
    let c_t = matrix_complexity(&t)?;
    let (op_a, op_t) = (operator_complexity(&a)?, operator_complexity(&t)?);
    let result = minimize(&a)?;
    let conjugated = result.conjugator.conjugate(&a) == result.minimal;
    Ok(vec![
        row("c(A) = 13", c_a == BigInt::from(13), format!("c(A) = {c_a}")),
        row("c(T) = 1", c_t == BigInt::from(1), format!("c(T) = {c_t}")),
        row("c_op(A) = c_op(T) = 1", op_a == 1 && op_t == 1, format!("{op_a}, {op_t}")),
        row(
            "minimize(A) is minimal",
            is_minimal(&result.minimal)? && conjugated,
            format!("B = {}, M = {}", result.conjugator, result.minimal),
        ),
        row("A conjugate to T", are_conjugate(&a, &t)?, "conjugacy keys agree"),
    ])
}

fn golden() -> Result<Vec<CheckRow>> {
    let a = m(2, 1, 1, 1);
    let c_op = operator_complexity(&a)?;
    let report = torus_bundle_report(&a)?;
    let census = spine_census(&a)?;
    Ok(vec![
        row("c_op = 2", c_op == 2, format!("c_op = {c_op}")),
        row(
            "conjectured complexity 7",
            report.conjectured_complexity == 7,
            format!("{}", report.conjectured_complexity),
        ),
        row(
            "census n = 7, cells = 8, pseudominimal",
            census.n_vertices == 7 && census.n_cells == 8 && census.pseudominimal,
            format!("n = {}, cells = {}, pseudominimal = {}", census.n_vertices, census.n_cells, census.pseudominimal),
        ),
    ])
}

fn flat_bundles() -> Result<Vec<CheckRow>> {
    let family = [
        UniMatrix::identity(),
        m(-1, 0, 0, -1),
        m(0, -1, 1, 1),
        m(-1, -1, 1, 0),
        m(0, 1, -1, 0),
        m(1, 0, 1, 1),
        m(-1, 0, -1, -1),
    ];
    family
        .iter()
        .map(|a| {
            let report = torus_bundle_report(a)?;
            Ok(row(
                format!("{a} conjectured 6"),
                report.conjectured_complexity == 6,
                format!("c_op = {}, conjectured = {}", report.c_operator, report.conjectured_complexity),
            ))
        })
        .collect()
}

fn inverse_symmetry(p_max: u64) -> Result<Vec<CheckRow>> {
    let violations = inverse_symmetry_scan(p_max)?;
    let detail = match violations.first() {
        None => format!("p <= {p_max}"),
        Some(v) => format!(
            "{} violations, first E({},{}) = {} != E({},{}) = {}",
            violations.len(),
            v.p,
            v.q,
            v.e_q,
            v.p,
            v.r,
            v.e_r
        ),
    };
    let mut sweep = Sweep::new();
    for (p, q) in coprime_pairs(p_max.min(300)) {
        let agrees = oracle_agrees(&BigInt::from(p), &BigInt::from(q), u64::MAX)?;
        sweep.check(agrees == Some(true), || format!("({p},{q})"));
    }
    Ok(vec![
        row("E(p,q) = E(p,r) when qr = ±1 mod p", violations.is_empty(), detail),
        sweep.into_row("E agrees with subtractive Euclid"),
    ])
}

fn ball(radius: usize) -> Result<Vec<CheckRow>> {
    let w0 = Hexagon::standard();
    let ball = bfs_ball(&w0, radius)?;
    let mut fast = Sweep::new();
    let mut by_matrix = Sweep::new();
    for (h, d) in &ball.nodes {
        fast.check(distance(&w0, h) == *d as u64, || h.to_string());
        let [basis, _, _] = h.adjacent_bases();
        by_matrix.check(matrix_complexity(&basis)? == BigInt::from(*d), || basis.to_string());
    }
    let mut sizes = Sweep::new();
    for r in 0..=radius.max(10) {
        let n = bfs_ball(&w0, r)?.len();
        sizes.check(n == trivalent_ball_size(r), || format!("r = {r}: {n}"));
    }
    let expected = trivalent_ball_size(radius);
    Ok(vec![
        row(
            format!("ball size at radius {radius}"),
            ball.len() == expected,
            format!("{} hexagons, expected {expected}", ball.len()),
        ),
        fast.into_row("distance equals BFS depth"),
        by_matrix.into_row("c(B) equals BFS depth"),
        row("no cycles", ball.non_parent_hits == 0, format!("{} non-parent hits", ball.non_parent_hits)),
        sizes.into_row("ball sizes 1 + 3(2^r - 1)"),
    ])
}

fn leading_vertex(p_max: u64) -> Result<Vec<CheckRow>> {
    let w0 = Hexagon::standard();
    let mut unique = Sweep::new();
    let mut dist = Sweep::new();
    for (p, q) in coprime_pairs(p_max) {
        let h = leading_vertex_hexagon(&BigInt::from(p), &BigInt::from(q))?;
        let candidates = leading_vertex_candidates(p as i64, q as i64);
        unique.check(candidates == [h.clone()], || format!("({p},{q}): {} candidates", candidates.len()));
        let d = distance(&w0, &h);
        let e = euclid_complexity_u64(p, q);
        dist.check(d == e, || format!("({p},{q}): d = {d}, E = {e}"));
    }
    Ok(vec![unique.into_row("one hexagon per leading vertex"), dist.into_row("d(W0, W) = E(p,q)")])
}

fn group_laws(seed: u64) -> Result<Vec<CheckRow>> {
    let sample = seeded_matrices(seed, 1000, 12);
    let c = |a: &UniMatrix| matrix_complexity(a);
    let mut inverse = Sweep::new();
    let mut negation = Sweep::new();
    let mut subadditive = Sweep::new();
    let mut parity_sum = Sweep::new();
    let mut homomorphism = Sweep::new();
    for (a, b) in sample.iter().zip(sample.iter().cycle().skip(1)) {
        let ca = c(a)?;
        inverse.check(c(&a.inverse())? == ca, || a.to_string());
        negation.check(c(&-a)? == ca, || a.to_string());
        let cb = c(b)?;
        let cab = c(&(a * b))?;
        subadditive.check(cab <= &ca + &cb, || format!("{a} * {b}"));
        parity_sum.check((&cab - &ca - &cb).is_even(), || format!("{a} * {b}"));
        homomorphism.check(parity(&(a * b))? == parity(a)? ^ parity(b)?, || format!("{a} * {b}"));
    }
    let generators = parity(&UniMatrix::s())? == 1 && parity(&UniMatrix::t())? == 1;
    Ok(vec![
        inverse.into_row("c(A^-1) = c(A)"),
        negation.into_row("c(-A) = c(A)"),
        subadditive.into_row("c(AB) <= c(A) + c(B)"),
        parity_sum.into_row("c(AB) = c(A) + c(B) mod 2"),
        homomorphism.into_row("parity is a homomorphism"),
        row("parity(S) = parity(T) = 1", generators, "generators are odd"),
    ])
}

fn power_law(seed: u64) -> Result<Vec<CheckRow>> {
    let mut sweep = Sweep::new();
    let mut largest = BigInt::from(0);
    for a in seeded_non_periodic(seed, 50, 10) {
        let report = power_law_check(&a, 5)?;
        largest = largest.max(report.rows.iter().map(|r| r.c_matrix.clone()).max().unwrap_or_default());
        sweep.check(report.holds, || format!("{a}: b = {}", report.b));
    }
    let mut row = sweep.into_row("c_op(A^k) = k c_op(A), constant even b, minimality inherited");
    row.detail.push_str(&format!(", largest c(A^k) = {largest}"));
    Ok(vec![row])
}

fn random_rational<R: Rng>(rng: &mut R) -> ExtRational {
    if rng.gen_ratio(1, 20) {
        return ExtRational::infinity();
    }
    ExtRational::new(rng.gen_range(-60..=60), rng.gen_range(1..=40)).expect("positive denominator")
}

fn farey(p_max: u64, seed: u64) -> Result<Vec<CheckRow>> {
    let zero = ExtRational::integer(0);
    let base = FareyTriangle::base();
    let mut to_zero = Sweep::new();
    let mut to_base = Sweep::new();
    for (p, q) in coprime_pairs(p_max) {
        let r = ExtRational::new(p, q)?;
        let e = euclid_complexity_u64(p, q);
        let d = dc_rationals(&zero, &r)?;
        to_zero.check(d + 1 == e, || format!("{r}: {d} vs E = {e}"));
        let t = dc_triangle_point(&base, &r)?;
        to_base.check(t == e, || format!("{r}: {t} vs E = {e}"));
    }

    // every reduced fraction in [-1, 1] with denominator at most 30, and ∞
    let mut points = vec![ExtRational::infinity()];
    for den in 1..=30i64 {
        for num in -den..=den {
            if num.gcd(&den) == 1 {
                points.push(ExtRational::new(num, den)?);
            }
        }
    }
    let mut exhaustive = Sweep::new();
    for (i, r1) in points.iter().enumerate() {
        for r2 in &points[i + 1..] {
            let fast = dc_rationals(r1, r2)?;
            let oracle = separating_lines_oracle(r1, r2)?;
            exhaustive.check(fast == oracle, || format!("({r1}, {r2}): {fast} vs {oracle}"));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moebius = Sweep::new();
    while moebius.cases < 500 {
        let a = random_word(&mut rng, 12);
        let (r1, r2) = (random_rational(&mut rng), random_rational(&mut rng));
        if r1 == r2 {
            continue;
        }
        let before = dc_rationals(&r1, &r2)?;
        let after = dc_rationals(&moebius_apply(&a, &r1)?, &moebius_apply(&a, &r2)?)?;
        moebius.check(before == after, || format!("{a} on ({r1}, {r2})"));
    }
    Ok(vec![
        to_zero.into_row("dc(0, p/q) = E(p,q) - 1"),
        to_base.into_row("dc(D0, p/q) = E(p,q)"),
        exhaustive.into_row("dc equals separating-line count, denominators <= 30"),
        moebius.into_row("dc is Moebius invariant"),
    ])
}

fn lens(p_max: u64) -> Result<Vec<CheckRow>> {
    let mut twist = Sweep::new();
    for (p, q) in coprime_pairs(p_max) {
        let d = lens_twist_distance(p, q)?;
        let e = euclid_complexity_u64(p, q);
        twist.check(d + 1 == e, || format!("({p},{q}): {d} vs E = {e}"));
    }
    let mut orbit = Sweep::new();
    for (p, q) in coprime_pairs(200) {
        let canonical = lens_normalize(p, q)?;
        let (e, e_canonical) = (euclid_complexity_u64(p, q), euclid_complexity_u64(p, canonical));
        orbit.check(e == e_canonical, || format!("({p},{q}) -> {canonical}"));
    }
    let report = lens_report(5, 2)?;
    Ok(vec![
        twist.into_row("twist distance = E(p,q) - 1"),
        orbit.into_row("E invariant under normalization, p <= 200"),
        row(
            "L(5,2): conjectured 1, spine vertices 1",
            report.conjectured_complexity == 1 && report.spine_vertices == 1,
            format!("conjectured = {}, spine vertices = {}", report.conjectured_complexity, report.spine_vertices),
        ),
    ])
}

fn census(seed: u64) -> Result<Vec<CheckRow>> {
    let mut faces = Sweep::new();
    let mut edges = Sweep::new();
    let mut swept = Sweep::new();
    let mut lengths = Sweep::new();
    let mut pseudominimal = Sweep::new();
    let mut beyond_bound = Sweep::new();
    for a in seeded_minimal_hyperbolic(seed, 100, 12) {
        let c = operator_complexity(&a)?;
        let census = spine_census(&a)?;
        faces.check(census.n_cells == census.n_vertices + 1, || a.to_string());
        edges.check(census.n_edges == 2 * census.n_vertices, || a.to_string());
        swept.check(census.swept_cells.len() as u64 == c + 2 && census.n_vertices == c + 5, || a.to_string());
        let exact: Vec<u64> = census.exact_lengths().collect();
        let even = exact.iter().all(|n| n % 2 == 0 && *n >= 4) && exact.iter().sum::<u64>() % 2 == 0;
        lengths.check(even, || format!("{a}: {exact:?}"));
        pseudominimal.check(census.pseudominimal, || a.to_string());
        beyond_bound.check(census.fiber_adjacent_cells <= census.fiber_adjacent_bound, || a.to_string());
    }
    Ok(vec![
        faces.into_row("f = n + 1"),
        edges.into_row("edges = 2n"),
        swept.into_row("swept cells = c + 2, n = c + 5"),
        lengths.into_row("interior lengths even and >= 4"),
        pseudominimal.into_row("pseudominimal"),
        beyond_bound.into_row("fibre-adjacent cells <= 6"),
    ])
}

fn homology(seed: u64) -> Result<Vec<CheckRow>> {
    let torus = first_homology(&UniMatrix::identity())?;
    let torus_ok = torus.betti == 3 && torus.torsion.is_empty() && torus.complexity_lower_bound() == 2;
    let mut bound = Sweep::new();
    for a in seeded_matrices(seed, 200, 12) {
        let report = torus_bundle_report(&a)?;
        bound.check(report.lower_bound_homology <= report.conjectured_complexity, || a.to_string());
    }
    Ok(vec![
        row("H1(T^3) = Z^3, bound 2 <= 6", torus_ok, format!("{torus}, bound {}", torus.complexity_lower_bound())),
        bound.into_row("homology bound <= conjectured complexity"),
    ])
}
