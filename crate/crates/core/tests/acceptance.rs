//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Run with `cargo test --test acceptance -- --nocapture` to see the
//! report.

use uqm_core::acceptance::criterion;

const SEED: u64 = 42;

fn run(id: usize) {
    let result = criterion(id, SEED).expect("criterion exists");
    println!("[acceptance] {}", result.line());
    assert!(result.passed, "{}", result.line());
}

#[test]
fn criterion_01_idp_regimes() {
    run(1);
}

#[test]
fn criterion_02_ensemble_comparison() {
    run(2);
}

#[test]
fn criterion_03_coherent_comparison() {
    run(3);
}

#[test]
fn criterion_04_ui_closed_forms() {
    run(4);
}

#[test]
fn criterion_05_finite_ui() {
    run(5);
}

#[test]
fn criterion_06_recovery() {
    run(6);
}

#[test]
fn criterion_07_noise() {
    run(7);
}

#[test]
fn criterion_08_channels() {
    run(8);
}

#[test]
fn criterion_09_measurements() {
    run(9);
}

#[test]
fn criterion_10_property_suites() {
    run(10);
}
