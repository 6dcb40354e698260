//! One line per acceptance criterion. Runs without the test harness so the
//! lines are always printed; exits nonzero if any criterion fails.

use std::process::ExitCode;

use cousinet::acceptance::run_all;
use cousinet::Exec;

fn main() -> ExitCode {
    let outcomes = run_all(Exec::auto(), |o| println!("{}", o.timed_line()));
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    println!("acceptance: {} of {} passed", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
