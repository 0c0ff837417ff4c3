//! Runs the verification suite, optionally filtered by a regular expression
//! on check ids, and prints one line per check.
//!
//! cargo run --release --example verification_suite -- 'noether\..*'

use zsinv::verify::{check_ids, run_suite};

fn main() {
    let filter = std::env::args().nth(1);
    println!("available checks: {}", check_ids().join(" "));
    let report = run_suite(filter.as_deref(), 0, 0).unwrap();
    for r in &report.records {
        println!("{} {:<24} {:>7} ms  {}", if r.pass { "PASS" } else { "FAIL" }, r.id, r.elapsed_ms, r.computed);
    }
    println!("{}/{} passed", report.summary.passed, report.summary.checks);
}
