//! The eleven acceptance criteria at their stated scales, one test each.
//! Every test writes its result line straight to stderr, past the harness's
//! output capture.

use std::io::Write;

use strlogic::acceptance::{run, Config};

fn criterion(id: usize) {
    let outcome = run(id, &Config::default());
    let _ = writeln!(std::io::stderr().lock(), "{outcome}");
    assert!(outcome.passed, "{outcome}");
}

#[test]
fn criterion_01_translation_compiler() {
    criterion(1);
}

#[test]
fn criterion_02_groupoid_products() {
    criterion(2);
}

#[test]
fn criterion_03_grammar_groupoid_round_trips() {
    criterion(3);
}

#[test]
fn criterion_04_nivat_decompositions() {
    criterion(4);
}

#[test]
fn criterion_05_arithmetic_quantifiers() {
    criterion(5);
}

#[test]
fn criterion_06_merge_rewriting() {
    criterion(6);
}

#[test]
fn criterion_07_bounded_strings() {
    criterion(7);
}

#[test]
fn criterion_08_tphi_bounds() {
    criterion(8);
}

#[test]
fn criterion_09_squares() {
    criterion(9);
}

#[test]
fn criterion_10_aperiodicity() {
    criterion(10);
}

#[test]
fn criterion_11_rank_types() {
    criterion(11);
}
