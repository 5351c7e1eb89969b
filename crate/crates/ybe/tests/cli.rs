//! End-to-end runs of the binary: exit codes, report fields, artifact
//! round-trips, and byte-determinism of the report payload.

use serde_json::Value;
use std::process::{Command, Output};

fn ybe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ybe"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    let text = String::from_utf8_lossy(&out.stdout);
    let parsed: Value = serde_json::from_str(&text).expect("stdout is a JSON report");
    parsed["report"].clone()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn the_flagship_family_classifies_clean() {
    let out = ybe(&["a2", "build", "--group", "6", "--j", "0,2,2,5,2,2", "--oracle"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep["simple_criterion"], Value::Bool(true));
    assert_eq!(rep["simple_oracle"], Value::Bool(true));
    assert_eq!(rep["certificate"], Value::String("skipped".into()));
    assert_eq!(rep["group_order"], Value::from(279_936));
}

#[test]
fn the_even_k_prime_is_refused() {
    let out = ybe(&["a2", "exsimple", "--p", "5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("k must be odd"));
}

#[test]
fn the_p3_construction_carries_a_true_certificate() {
    let out = ybe(&["a2", "exsimple", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["certificate"], Value::Bool(true));
    assert_eq!(rep["simple_oracle"], Value::Bool(true));
}

#[test]
fn unknown_flags_exit_2() {
    let out = ybe(&["a2", "build", "--bogus"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn artifacts_round_trip_and_reports_are_deterministic() {
    let dir = tempfile::tempdir().expect("tempdir");
    let dir_arg = dir.path().to_str().expect("utf-8 path");
    let out = ybe(&["--out", dir_arg, "a2", "crt", "--primes", "2,3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let solution = dir.path().join("solution.json");
    assert!(solution.exists() && dir.path().join("family.json").exists());

    let sol_arg = solution.to_str().expect("utf-8 path");
    let verify = ybe(&["verify", sol_arg]);
    assert_eq!(code(&verify), 0);

    let first = ybe(&["analyze", sol_arg]);
    let second = ybe(&["analyze", sol_arg]);
    assert_eq!(code(&first), 0);
    let (a, b) = (report(&first), report(&second));
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).expect("serializes"),
        serde_json::to_string(&b).expect("serializes"),
        "payload must be byte-stable across runs"
    );
    assert_eq!(a["simple_oracle"], Value::Bool(true));
}

#[test]
fn corrupted_sigma_tables_exit_1_with_a_witness() {
    let dir = tempfile::tempdir().expect("tempdir");
    let built = ybe(&["--out", dir.path().to_str().expect("utf-8"), "a2", "build", "--group", "3", "--j", "0,1,1"]);
    assert_eq!(code(&built), 0);
    let path = dir.path().join("solution.json");
    let mut file: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("artifact")).expect("json");
    let old = file["sigma"][0][0].as_u64().expect("entry");
    file["sigma"][0][0] = Value::from((old + 1) % 9);
    std::fs::write(&path, serde_json::to_string(&file).expect("serializes")).expect("rewrite");

    let out = ybe(&["verify", path.to_str().expect("utf-8")]);
    assert_eq!(code(&out), 1);
    assert!(report(&out)["witness"].is_object(), "expected a concrete witness");
}

#[test]
fn truncated_files_exit_2() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"size\": 4").expect("write");
    let out = ybe(&["verify", path.to_str().expect("utf-8")]);
    assert_eq!(code(&out), 2);
}

#[test]
fn the_doubled_block_brace_reports_no_generating_orbit() {
    let out = ybe(&["asym", "mod6", "--primes", "2,3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rep = report(&out);
    assert_eq!(rep["order"], Value::from(288));
    assert_eq!(rep["simple"], Value::Bool(true));
    assert_eq!(rep["generates"], Value::Bool(false));
}

#[test]
fn oversize_censuses_are_refused() {
    let out = ybe(&["a2", "census", "--group", "12"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("--force"));
}

#[test]
fn brace_files_round_trip_through_the_brace_commands() {
    let dir = tempfile::tempdir().expect("tempdir");
    let built = ybe(&["--out", dir.path().to_str().expect("utf-8"), "asym", "example", "--primes", "2,3"]);
    assert_eq!(code(&built), 0, "{}", String::from_utf8_lossy(&built.stderr));
    let brace = dir.path().join("brace.json");
    assert!(brace.exists());
    let brace_arg = brace.to_str().expect("utf-8");

    let verify = ybe(&["brace", "verify", brace_arg]);
    assert_eq!(code(&verify), 0);
    assert_eq!(report(&verify)["brace_law"], Value::Bool(true));

    let simple = ybe(&["brace", "simple", brace_arg]);
    assert_eq!(code(&simple), 0);
    assert_eq!(report(&simple)["brace_simple"], Value::Bool(true));

    let orbit = ybe(&["brace", "orbit", brace_arg, "--element", "24"]);
    assert_eq!(code(&orbit), 0);
    let rep = report(&orbit);
    assert_eq!(rep["orbit_size"], Value::from(36));
    assert_eq!(rep["generates"], Value::Bool(true));
}

#[test]
fn census_over_the_klein_group_is_clean() {
    let out = ybe(&["a2", "census", "--group", "2,2"]);
    assert_eq!(code(&out), 0);
    let rep = report(&out);
    assert_eq!(rep["families"], Value::from(256));
    assert_eq!(rep["mismatches"], Value::from(0));
}
