//! Acceptance criteria, one line each: the checks behind a criterion, its
//! time limit, and whether every check passed within it.
//!
//! Checks run one criterion at a time so the measured times are not inflated
//! by other criteria competing for cores.

use std::time::{Duration, Instant};

use zsinv::verify::{check_ids, run_suite};

struct Criterion {
    number: u32,
    what: &'static str,
    /// Regular expression over check ids.
    checks: &'static str,
    limit: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, what: "Davenport constants of p-groups, exact", checks: "davenport", limit: secs(60) },
    Criterion { number: 2, what: "D_k(C_p^2) = kp + p - 1, exact", checks: "davenport-k", limit: secs(600) },
    Criterion { number: 3, what: "maximal zero-sum free sequences over C_p", checks: "lemma\\.zsf", limit: secs(30) },
    Criterion { number: 4, what: "short zero-sums in C_p^2, 6435 exhaustive + 1000 random", checks: "lemma\\.eta", limit: secs(60) },
    Criterion { number: 5, what: "|Sigma(S)| >= min(p, |S|), 10^4 random", checks: "lemma\\.cd", limit: secs(30) },
    Criterion { number: 6, what: "separ and nullak factorizations, 10^3 each", checks: "lemma\\.(separ|nullak)", limit: secs(120) },
    Criterion { number: 7, what: "beta(H_3, V_w) = 9 certified at d = 11", checks: "noether\\.h3", limit: secs(300) },
    Criterion { number: 8, what: "tau(x^6 y^3) obstruction and degree <= 3 irreducibles", checks: "noether\\.obstruction", limit: secs(60) },
    Criterion { number: 9, what: "polarization identity on V_w^3", checks: "noether\\.polar", limit: secs(10) },
    Criterion { number: 10, what: "beta(A) = D(A) for C_3, C_3^2, C_2^3", checks: "noether\\.abelian", limit: secs(120) },
    Criterion { number: 11, what: "beta_3(C_3^2) = 11 and the reduction chain", checks: "noether\\.reduction", limit: secs(300) },
    Criterion { number: 12, what: "property suites", checks: "property\\..*", limit: secs(300) },
];

#[test]
fn acceptance_criteria() {
    let seed = 0;
    let mut failed = Vec::new();
    let mut covered = Vec::new();
    for c in CRITERIA {
        let start = Instant::now();
        let report = run_suite(Some(c.checks), 0, seed).expect("criterion names existing checks");
        let elapsed = start.elapsed();
        let in_time = elapsed <= c.limit;
        let pass = report.summary.pass && in_time;
        println!(
            "criterion {:>2} {}: {} [{:.2?} of {:?}]",
            c.number,
            if pass { "PASS" } else { "FAIL" },
            c.what,
            elapsed,
            c.limit
        );
        for r in &report.records {
            println!("    {} {:<24} {}", if r.pass { "ok  " } else { "FAIL" }, r.id, r.computed);
            if !r.pass {
                println!("         expected {}", r.expected);
            }
            covered.push(r.id.clone());
        }
        if !pass {
            failed.push(c.number);
        }
    }
    covered.sort();
    assert_eq!(covered, check_ids(), "every check belongs to exactly one criterion");
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
