use std::process::Command;

use serde_json::Value;
use zsinv::verify::{run_suite, VerificationReport};

fn zsinv(args: &[&str]) -> (Option<i32>, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_zsinv")).args(args).output().expect("binary runs");
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), json)
}

/// Report with timings removed.
fn untimed(mut r: VerificationReport) -> VerificationReport {
    for rec in &mut r.records {
        rec.elapsed_ms = 0;
    }
    r
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let filter = "lemma\\..*|property\\.(trukk|decomposition)";
    let one = untimed(run_suite(Some(filter), 1, 7).unwrap());
    let three = untimed(run_suite(Some(filter), 3, 7).unwrap());
    assert_eq!(one, three);
    assert!(one.summary.pass);
    assert_eq!(one.summary.seed, 7);
}

#[test]
fn davenport_json() {
    let (code, v) = zsinv(&["davenport", "--group", "3,3"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"], 5);
    assert!(v["elapsed_ms"].is_number());
    assert!(v["witness"].is_string());
}

#[test]
fn factor_into_k_parts() {
    let (code, v) = zsinv(&["factor", "--group", "3", "--seq", "1^6", "-k", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["result"], 2);
}

#[test]
fn noether_json_keys() {
    let (code, v) = zsinv(&["noether", "--module", "p=3;r=1;X=all", "--dmax", "4"]);
    assert_eq!(code, Some(0), "{v}");
    assert!(v.get("degrees").is_some(), "{v}");
}

#[test]
fn verify_exit_codes() {
    let (code, v) = zsinv(&["verify", "--filter", "lemma\\.cd", "--jobs", "2"]);
    assert_eq!(code, Some(0));
    assert_eq!(v["summary"]["checks"], 1);
    assert_eq!(v["records"][0]["id"], "lemma.cd");

    let (code, _) = zsinv(&["verify", "--filter", "no-such-check"]);
    assert_eq!(code, Some(2));
    let (code, _) = zsinv(&["verify", "--filter", "("]);
    assert_eq!(code, Some(2));
}

#[test]
fn bad_input_is_an_error() {
    let (code, _) = zsinv(&["davenport", "--group", "0"]);
    assert_eq!(code, Some(2));
    let (code, _) = zsinv(&["lemma", "zsf", "--group", "3,3"]);
    assert_eq!(code, Some(2));
}
