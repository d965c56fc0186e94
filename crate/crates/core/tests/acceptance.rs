//! Acceptance criteria 1–12. Prints one line per criterion and exits nonzero
//! if any criterion fails or misses its time budget.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use thetaflip_core::verify::{run_suite, Suite, VerifyOptions};

struct Criterion {
    number: u32,
    suite: Suite,
    budget: Option<Duration>,
}

const fn criterion(number: u32, suite: Suite, budget_ms: Option<u64>) -> Criterion {
    let budget = match budget_ms {
        Some(ms) => Some(Duration::from_millis(ms)),
        None => None,
    };
    Criterion { number, suite, budget }
}

const CRITERIA: [Criterion; 12] = [
    criterion(1, Suite::WorkedExample, Some(10)),
    criterion(2, Suite::Golden, None),
    criterion(3, Suite::FlatBundles, None),
    criterion(4, Suite::InverseSymmetry, Some(10_000)),
    criterion(5, Suite::Ball, None),
    criterion(6, Suite::LeadingVertex, None),
    criterion(7, Suite::GroupLaws, None),
    criterion(8, Suite::PowerLaw, None),
    criterion(9, Suite::Farey, Some(30_000)),
    criterion(10, Suite::Lens, None),
    criterion(11, Suite::Census, None),
    criterion(12, Suite::Homology, None),
];

fn main() -> ExitCode {
    let options = VerifyOptions::default();
    let mut all_passed = true;
    for c in &CRITERIA {
        let start = Instant::now();
        let outcome = run_suite(c.suite, &options);
        let elapsed = start.elapsed();
        let (passed, detail) = match &outcome {
            Ok(report) => {
                let failing: Vec<&str> = report.rows.iter().filter(|r| !r.passed).map(|r| r.check.as_str()).collect();
                (
                    failing.is_empty(),
                    if failing.is_empty() { format!("{} checks", report.rows.len()) } else { failing.join("; ") },
                )
            }
            Err(e) => (false, e.to_string()),
        };
        let in_budget = c.budget.is_none_or(|budget| elapsed <= budget);
        let budget = c.budget.map_or(String::new(), |b| format!(" / budget {} ms", b.as_millis()));
        let ok = passed && in_budget;
        all_passed &= ok;
        println!(
            "criterion {:>2} {:<16} {}  {detail}  ({:.1} ms{budget}){}",
            c.number,
            c.suite.name(),
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64() * 1e3,
            if in_budget { "" } else { " over budget" },
        );
        if let Ok(report) = &outcome {
            if !passed {
                print!("{report}");
            }
        }
    }
    if all_passed {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
