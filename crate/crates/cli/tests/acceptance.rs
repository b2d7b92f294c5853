//! Acceptance gate: one PASS/FAIL line per criterion.

use dimer_core::verify;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

const PFAFFIAN_BUDGET: Duration = Duration::from_secs(60);

fn line(id: usize, title: &str, passed: bool, detail: &str) -> bool {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("criterion {id} [{title}]: {status} - {detail}");
    passed
}

fn determinism() -> (bool, String) {
    let run = || Command::new(env!("CARGO_BIN_EXE_dimers")).arg("verify").output();
    let (a, b) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return (false, format!("could not run dimers: {e}")),
    };
    if !a.status.success() || !b.status.success() {
        return (false, format!("verify exited with {} and {}", a.status, b.status));
    }
    if a.stdout != b.stdout {
        return (false, "outputs differ between runs".into());
    }
    (true, format!("exit 0 twice, {} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let mut all = true;
    for id in 1..=verify::TITLES.len() {
        let start = Instant::now();
        let c = verify::run(id);
        let elapsed = start.elapsed();
        let mut passed = c.passed;
        let mut detail = format!("{} ({:.1}s)", c.detail, elapsed.as_secs_f64());
        if id == 1 && elapsed >= PFAFFIAN_BUDGET {
            passed = false;
            detail.push_str(", over the 60s budget");
        }
        all &= line(id, c.title, passed, &detail);
    }
    let (passed, detail) = determinism();
    all &= line(9, "CLI determinism", passed, &detail);
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
