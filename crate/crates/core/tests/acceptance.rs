//! Acceptance criteria 1 to 8, one line each. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use stanley_bij::verify::{self, CheckResult};

fn main() -> ExitCode {
    let suites: Vec<(&str, Box<dyn Fn() -> CheckResult>)> = vec![
        ("1 exhaustive bijection, k <= 7", Box::new(|| verify::bijection(7))),
        ("2 class sizes, k <= 7", Box::new(|| verify::counts(7))),
        ("3 worked example", Box::new(verify::golden)),
        ("4 invariant instrumentation, k <= 6", Box::new(|| verify::instrumentation(6))),
        ("5 cluster order independence, 20 instances, k <= 7", Box::new(|| verify::order_independence(20, 7, 5))),
        ("6 direct description, k <= 6", Box::new(|| verify::predictor(6))),
        ("7 character identities, k <= 6", Box::new(|| verify::characters(6))),
        ("8 random round trip, 1000 samples, 10 <= k <= 14", Box::new(|| verify::random_roundtrip(1000, 10, 14, 8))),
    ];
    let mut failed = 0;
    for (name, run) in suites {
        let start = Instant::now();
        let r = run();
        let secs = start.elapsed().as_secs_f64();
        println!("[{}] criterion {name} ({secs:.1}s): {}", if r.passed { "PASS" } else { "FAIL" }, r.detail);
        if !r.passed {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria fail");
        ExitCode::FAILURE
    }
}
