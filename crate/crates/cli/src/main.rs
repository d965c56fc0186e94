use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;

use thetaflip_core::conjugacy::{classify, minimal_matrices, minimize, parity};
use thetaflip_core::euclid::{continued_fraction, euclid_word};
use thetaflip_core::farey::{dc_rationals, dc_triangle_point};
use thetaflip_core::flip_tree::{ball_to_dot, bfs_ball, descend_to_standard, path_to_dot};
use thetaflip_core::manifolds::{
    bundles_homeomorphic, lens_homeomorphic, lens_report, spine_census, torus_bundle_report, BoundaryLength,
};
use thetaflip_core::verify::{run_all, run_suite, Suite, SuiteReport, VerifyOptions, DEFAULT_SEED};
use thetaflip_core::{conjugacy, euclid_complexity, matrix_complexity, ExtRational, FareyTriangle, Hexagon, UniMatrix};

#[derive(Parser, Debug)]
#[command(name = "thetaflip", version, about = "Flip-tree complexities of SL(2,Z), torus bundles and lens spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// A matrix entered row-major as `A B C D`.
#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(allow_negative_numbers = true)]
    a: BigInt,
    #[arg(allow_negative_numbers = true)]
    b: BigInt,
    #[arg(allow_negative_numbers = true)]
    c: BigInt,
    #[arg(allow_negative_numbers = true)]
    d: BigInt,
}

impl MatrixArgs {
    fn matrix(&self) -> thetaflip_core::Result<UniMatrix> {
        UniMatrix::sl2(self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone())
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euclid complexity, continued fraction and row-operation word of p/q
    Euclid { p: BigInt, q: BigInt },
    /// Matrix complexity c(A)
    Cmat {
        #[command(flatten)]
        m: MatrixArgs,
        /// Print the descent from A·W0 to W0
        #[arg(long)]
        trace: bool,
    },
    /// Operator complexity, class and minimal matrices
    Cop {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        json: bool,
    },
    /// Torus bundle report
    Bundle {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        json: bool,
    },
    /// Spine census of a minimal matrix
    Census {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long)]
        json: bool,
    },
    /// Whether two torus bundles are homeomorphic
    HomeoBundle {
        #[arg(allow_negative_numbers = true, num_args = 8, value_names = ["A1", "B1", "C1", "D1", "A2", "B2", "C2", "D2"])]
        entries: Vec<BigInt>,
    },
    /// Lens space report
    Lens {
        p: u64,
        q: u64,
        #[arg(long)]
        json: bool,
    },
    /// Whether two lens spaces are homeomorphic
    HomeoLens { p1: u64, q1: u64, p2: u64, q2: u64 },
    /// Farey lines separating two points of Q ∪ {∞} ("p/q" or "inf")
    Dc {
        #[arg(allow_hyphen_values = true)]
        r1: ExtRational,
        #[arg(allow_hyphen_values = true)]
        r2: ExtRational,
    },
    /// Farey lines between the base triangle (∞, -1, 0) and a point
    DcTriangle {
        #[arg(allow_hyphen_values = true)]
        r: ExtRational,
    },
    /// Hexagons within R flips of W0
    Ball {
        radius: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Mainstream of a non-periodic operator
    Mainstream {
        #[command(flatten)]
        m: MatrixArgs,
        #[arg(long, default_value_t = 1)]
        window: u32,
        #[arg(long)]
        dot: bool,
    },
    /// Run a named verification suite, or "all"
    Verify {
        suite: String,
        #[arg(long)]
        pmax: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// Appends a line to the output buffer. Writing to a `String` cannot fail.
macro_rules! say {
    ($out:expr, $($arg:tt)*) => {{
        let _ = writeln!($out, $($arg)*);
    }};
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Done,
    VerificationFailed,
}

fn print_json<T: Serialize>(out: &mut String, value: &T) {
    say!(out, "{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn run(command: Command, out: &mut String) -> thetaflip_core::Result<Outcome> {
    match command {
        Command::Euclid { p, q } => {
            say!(out, "E = {}", euclid_complexity(&p, &q)?);
            say!(out, "continued fraction = {}", continued_fraction(&p, &q)?);
            if p > q && q > BigInt::from(0) {
                say!(out, "word = {}", euclid_word(&p, &q)?);
            }
        }
        Command::Cmat { m, trace } => {
            let a = m.matrix()?;
            say!(out, "{}", matrix_complexity(&a)?);
            if trace {
                for (i, h) in descend_to_standard(&Hexagon::from_matrix(&a)).hexagons().iter().enumerate() {
                    say!(out, "{i:>4}  {h}  lead {}", h.leading_vertex());
                }
            }
        }
        Command::Cop { m, json } => {
            let a = m.matrix()?;
            let class = classify(&a)?;
            let result = minimize(&a)?;
            let minimal_set = minimal_matrices(&a)?;
            let parity = parity(&a)?;
            if json {
                #[derive(Serialize)]
                struct CopReport {
                    operator_class: conjugacy::OperatorClass,
                    minimization: thetaflip_core::MinimizationResult,
                    minimal_matrices: Vec<UniMatrix>,
                    parity: u8,
                }
                print_json(
                    out,
                    &CopReport { operator_class: class, minimization: result, minimal_matrices: minimal_set, parity },
                );
            } else {
                say!(out, "class = {class}");
                say!(out, "c_op = {}", result.operator_complexity);
                say!(out, "minimal = {}", result.minimal);
                say!(out, "conjugator = {}", result.conjugator);
                let set: Vec<String> = minimal_set.iter().map(UniMatrix::to_string).collect();
                say!(out, "minimal matrices = {}", set.join(" "));
                say!(out, "parity = {parity}");
            }
        }
        Command::Bundle { m, json } => {
            let report = torus_bundle_report(&m.matrix()?)?;
            if json {
                print_json(out, &report);
            } else {
                say!(out, "input = {}", report.input_matrix);
                say!(out, "class = {}", report.operator_class);
                say!(out, "c_matrix = {}", report.c_matrix);
                say!(out, "c_operator = {}", report.c_operator);
                say!(out, "minimal_matrix = {}", report.minimal_matrix);
                say!(out, "conjectured_complexity = {}", report.conjectured_complexity);
                say!(out, "upper_bound_source = {}", report.upper_bound_source);
                say!(out, "homology = {}", report.homology);
                say!(out, "lower_bound_homology = {}", report.lower_bound_homology);
                say!(out, "homeo_key = {}", report.homeo_key);
                if let Some(census) = &report.census {
                    say!(
                        out,
                        "spine = {} vertices, {} edges, {} cells",
                        census.n_vertices,
                        census.n_edges,
                        census.n_cells
                    );
                }
                if let Some(flat) = &report.flat_spine {
                    say!(out, "spine = 6 vertices, {flat}");
                }
            }
        }
        Command::Census { m, json } => {
            let census = spine_census(&m.matrix()?)?;
            if json {
                print_json(out, &census);
            } else {
                say!(out, "n_vertices = {}", census.n_vertices);
                say!(out, "n_edges = {}", census.n_edges);
                say!(out, "n_cells = {}", census.n_cells);
                say!(out, "fiber_pentagons = {}", census.fiber_pentagons);
                say!(out, "pseudominimal = {}", census.pseudominimal);
                say!(
                    out,
                    "fiber_adjacent_cells = {} (bound {})",
                    census.fiber_adjacent_cells,
                    census.fiber_adjacent_bound
                );
                for cell in &census.swept_cells {
                    let birth = cell.birth_flip.map_or("L'".to_string(), |b| b.to_string());
                    let death = cell.death_flip.map_or("L1".to_string(), |d| d.to_string());
                    let length = match cell.boundary_length {
                        BoundaryLength::Exact(n) => n.to_string(),
                        BoundaryLength::AtLeast(n) => format!(">={n}"),
                    };
                    say!(out, "cell {}  {birth} -> {death}  length {length}", cell.pair);
                }
            }
        }
        Command::HomeoBundle { entries } => {
            let a = UniMatrix::sl2(entries[0].clone(), entries[1].clone(), entries[2].clone(), entries[3].clone())?;
            let b = UniMatrix::sl2(entries[4].clone(), entries[5].clone(), entries[6].clone(), entries[7].clone())?;
            say!(out, "{}", bundles_homeomorphic(&a, &b)?);
        }
        Command::Lens { p, q, json } => {
            let report = lens_report(p, q)?;
            if json {
                print_json(out, &report);
            } else {
                say!(out, "L({}, {})", report.p, report.q);
                say!(out, "canonical_q = {}", report.canonical_q);
                say!(out, "euclid = {}", report.euclid);
                say!(out, "conjectured_complexity = {}", report.conjectured_complexity);
                if report.special_small_space {
                    say!(out, "special_small_space = true");
                }
                say!(out, "gluing_matrix = {}", report.gluing_matrix);
                say!(out, "twist_distance = {}", report.twist_distance);
                say!(out, "spine_vertices = {}", report.spine_vertices);
            }
        }
        Command::HomeoLens { p1, q1, p2, q2 } => say!(out, "{}", lens_homeomorphic(p1, q1, p2, q2)?),
        Command::Dc { r1, r2 } => say!(out, "{}", dc_rationals(&r1, &r2)?),
        Command::DcTriangle { r } => say!(out, "{}", dc_triangle_point(&FareyTriangle::base(), &r)?),
        Command::Ball { radius, dot } => {
            let ball = bfs_ball(&Hexagon::standard(), radius)?;
            if dot {
                let _ = write!(out, "{}", ball_to_dot(&ball));
            } else {
                for (h, d) in &ball.nodes {
                    say!(out, "{d}  {h}");
                }
            }
        }
        Command::Mainstream { m, window, dot } => {
            let path = conjugacy::mainstream(&m.matrix()?, window)?;
            if dot {
                let _ = write!(out, "{}", path_to_dot("mainstream", &path));
            } else {
                for h in path.hexagons() {
                    say!(out, "{h}  lead {}", h.leading_vertex());
                }
            }
        }
        Command::Verify { suite, pmax, seed, radius, json } => {
            let options = VerifyOptions { p_max: pmax, seed, radius };
            let reports: Vec<SuiteReport> =
                if suite == "all" { run_all(&options)? } else { vec![run_suite(suite.parse::<Suite>()?, &options)?] };
            let passed = reports.iter().all(SuiteReport::passed);
            if json {
                print_json(out, &reports);
            } else {
                for report in &reports {
                    let _ = write!(out, "{report}");
                }
                say!(out, "{}", if passed { "all checks pass" } else { "verification FAILED" });
            }
            if !passed {
                return Ok(Outcome::VerificationFailed);
            }
        }
    }
    Ok(Outcome::Done)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli.command, &mut out);
    // a reader that hangs up early (`| head`) is not an error
    if let Err(e) = io::stdout().lock().write_all(out.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match result {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
