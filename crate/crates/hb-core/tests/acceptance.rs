//! Acceptance gate: runs the full verification suite once at the standard
//! resolution and asserts on it criterion by criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the per-criterion
//! summary lines.

use hb_core::{run_suite, standard_presets, CheckRow, Grid};
use std::sync::LazyLock;

static SUITE: LazyLock<Vec<CheckRow>> = LazyLock::new(|| {
    run_suite(&standard_presets(), Grid::standard(), 42).expect("verification suite must run")
});

fn check(criterion: u8, expected_rows: usize, label: &str) {
    let rows: Vec<&CheckRow> = SUITE.iter().filter(|r| r.criterion == criterion).collect();
    assert_eq!(
        rows.len(),
        expected_rows,
        "criterion {criterion} should produce {expected_rows} rows, got {}",
        rows.len()
    );
    let failed: Vec<&&CheckRow> = rows.iter().filter(|r| !r.passed).collect();
    let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion:>2}: {verdict} ({} checks) - {label}",
        rows.len()
    );
    assert!(
        failed.is_empty(),
        "criterion {criterion} failed rows: {:?}",
        failed
            .iter()
            .map(|r| format!("[{}] {} measured {:.3e}", r.preset, r.name, r.measured))
            .collect::<Vec<_>>()
    );
}

#[test]
fn criterion_01_mate_closed_forms() {
    check(1, 4, "mate against closed forms");
}

#[test]
fn criterion_02_lift_closed_forms() {
    check(2, 5, "lift oracles for b = (1+z)/2");
}

#[test]
fn criterion_03_product_kernel_lift() {
    check(3, 48, "closed-form product lift vs direct solve");
}

#[test]
fn criterion_04_reproducing_kernels() {
    check(4, 49, "kernel inner products vs evaluation functionals");
}

#[test]
fn criterion_05_clark_masses() {
    check(5, 7, "Clark density mass bookkeeping");
}

#[test]
fn criterion_06_clark_isometry() {
    check(6, 48, "Clark isometry on kernel combinations");
}

#[test]
fn criterion_07_shift_norm_sections() {
    check(7, 9, "finite shift sections vs closed-form norm");
}

#[test]
fn criterion_08_lacunary_approximants() {
    check(8, 14, "lacunary approximant bounds");
}

#[test]
fn criterion_09_shift_recurrence() {
    check(9, 36, "backward recurrence for kernel multiples");
}

#[test]
fn criterion_10_cyclicity_residuals() {
    check(10, 3, "cyclicity residual curves");
}

#[test]
fn criterion_11_completeness_decay() {
    check(11, 3, "completeness decay and Blaschke stall");
}

#[test]
fn criterion_12_one_minus_cb_classifier() {
    check(12, 6, "1 - cb cyclicity classifier");
}

#[test]
fn criterion_13_cauchy_transform_identities() {
    check(13, 3, "Cauchy transform identities and weak-type profile");
}
