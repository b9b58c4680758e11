//! One pass/fail line per acceptance criterion.
//!
//! Run with `cargo test -p mzv-core --test acceptance`. Exits nonzero when any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mzv_core::identities::{acceptance_cases, run_cases, Context, IdentityReport, SuiteCase, VerifyConfig};

const CRITERIA: [(u32, &str, Option<u64>); 11] = [
    (1, "worked example, first display, k = 2..4", Some(10)),
    (2, "worked example, displays 2 and 3, k, l = 2..3", Some(30)),
    (3, "star-shuffle symmetric sum, weight <= 7, depth <= 4", Some(300)),
    (4, "repeated-ones corollary and |X_j| counts", None),
    (5, "partition sums over 1_r against inverse map and T^r", None),
    (6, "star partition sum equals complete Bell polynomial in e(j;T)", None),
    (7, "r! as a complete Bell polynomial and r! star values", None),
    (8, "partition decomposition and multiplicativity, r <= 7", None),
    (9, "rho(harmonic) equals shuffle regularization, weight <= 6, depth <= 3", None),
    (10, "closed forms of small zeta values", None),
    (11, "B_4,2 and Stirling tables against enumeration", None),
];

fn main() -> ExitCode {
    let ctx = Context::new(VerifyConfig::default()).expect("default config is valid");
    let cases = acceptance_cases();
    let mut failed = 0;
    for (n, what, limit) in CRITERIA {
        let mine: Vec<SuiteCase> = cases.iter().filter(|c| c.criterion == n).cloned().collect();
        let start = Instant::now();
        let reports = run_cases(&ctx, &mine, None).expect("worker pool");
        let elapsed = start.elapsed();
        let bad: Vec<&IdentityReport> = reports.iter().filter(|r| !r.pass).collect();
        let slow = limit.is_some_and(|s| elapsed > Duration::from_secs(s));
        let ok = bad.is_empty() && !slow;
        let max_dev = reports.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
        let max_bound = reports.iter().map(|r| r.bound).fold(0.0, f64::max);
        println!(
            "AC{n:<2} {} {what}: {}/{} checks, max deviation {max_dev:.1e}, max bound {max_bound:.1e}, {:.2}s",
            if ok { "PASS" } else { "FAIL" },
            reports.len() - bad.len(),
            reports.len(),
            elapsed.as_secs_f64()
        );
        if slow {
            println!("     runtime limit of {}s exceeded", limit.unwrap());
        }
        for r in bad.iter().take(5) {
            println!("     {r}");
        }
        if !ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
