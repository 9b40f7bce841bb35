//! Runs every acceptance criterion and prints one PASS/FAIL line per
//! criterion, followed by the individual checks of any failing criterion.

use std::process::ExitCode;
use std::time::Instant;

use strucprof::verify::{criterion, criterion_8, Check};

fn main() -> ExitCode {
    let mut all: Vec<Check> = Vec::new();
    let mut failed = 0;
    for i in 1..=8 {
        let start = Instant::now();
        let checks = if i == 8 {
            Ok(vec![criterion_8(&all)])
        } else {
            criterion(i)
        };
        let checks = match checks {
            Ok(c) => c,
            Err(e) => {
                println!("criterion {i}: FAIL (error: {e})");
                failed += 1;
                continue;
            }
        };
        let bad: Vec<&Check> = checks.iter().filter(|c| !c.passed).collect();
        let status = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {i}: {status} ({}/{} checks, {:.1}s)",
            checks.len() - bad.len(),
            checks.len(),
            start.elapsed().as_secs_f64()
        );
        for c in &bad {
            println!("    {}", c.line());
        }
        failed += usize::from(!bad.is_empty());
        all.extend(checks);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
