//! The scripted verification suite, one test per criterion. Each test
//! prints a one-line verdict (visible with `--nocapture`, and in the
//! harness output via the test name) and enforces the documented
//! runtime budget.

use ybe::report::Timed;
use ybe::repro::{self, CriterionReport};

fn run(rep: Timed<CriterionReport>, budget_s: u128) {
    let verdict = if rep.report.passed { "PASS" } else { "FAIL" };
    let line = format!(
        "criterion {}: {verdict}  {}  ({:.1} s)",
        rep.report.index,
        rep.report.title,
        rep.elapsed_ms as f64 / 1000.0
    );
    println!("{line}");
    assert!(rep.report.passed, "{line}\n{}", rep.report.details.join("\n"));
    assert!(
        rep.elapsed_ms <= budget_s * 1000,
        "runtime budget of {budget_s} s exceeded: {line}"
    );
}

#[test]
fn acceptance_1_the_36_point_cyclic_example_is_simple() {
    run(repro::criterion_1(), 5);
}

#[test]
fn acceptance_2_the_klein_example_and_the_mod4_census() {
    run(repro::criterion_2(), 120);
}

#[test]
fn acceptance_3_criteria_match_oracles_across_six_censuses() {
    run(repro::criterion_3(), 1800);
}

#[test]
fn acceptance_4_the_prime_constructions_are_simple_with_certificates() {
    run(repro::criterion_4(), 600);
}

#[test]
fn acceptance_5_the_companion_brace_pipeline() {
    run(repro::criterion_5(), 120);
}

#[test]
fn acceptance_6_the_doubled_block_brace_has_no_generating_orbit() {
    run(repro::criterion_6(), 300);
}

#[test]
fn acceptance_7_permutation_groups_match_quotient_braces() {
    run(repro::criterion_7(), 600);
}

#[test]
fn acceptance_8_random_mutations_are_always_rejected() {
    run(repro::criterion_8(), 60);
}
