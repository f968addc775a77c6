//! Acceptance suite: every criterion runs at its exact threshold and prints
//! one pass/fail line. Run with `--nocapture` to see the lines on success:
//!
//! ```text
//! cargo test -p wodot-core --test acceptance -- --nocapture
//! ```

use wodot_core::acceptance::{self, CriterionResult};
use wodot_core::{Budgets, DEFAULT_SEED};

fn report(result: &CriterionResult) {
    println!(
        "criterion {} ({}): {} — {}",
        result.id,
        result.name,
        if result.passed { "PASS" } else { "FAIL" },
        result.detail
    );
    assert!(result.passed, "criterion {} failed: {}", result.id, result.detail);
}

#[test]
fn criterion_1_coverage_campaign() {
    report(&acceptance::criterion_1_coverage_campaign(&Budgets::default()));
}

#[test]
fn criterion_2_dp_vs_naive() {
    report(&acceptance::criterion_2_dp_vs_naive(DEFAULT_SEED, &Budgets::default()));
}

#[test]
fn criterion_3_shift_and_generation() {
    report(&acceptance::criterion_3_shift_and_generation(
        DEFAULT_SEED,
        &Budgets::default(),
    ));
}

#[test]
fn criterion_4_pair_bounds_and_spanning_subsets() {
    report(&acceptance::criterion_4_pair_bounds_and_spanning_subsets());
}

#[test]
fn criterion_5_congruence_vs_oracle() {
    report(&acceptance::criterion_5_congruence_vs_oracle(
        DEFAULT_SEED,
        &Budgets::default(),
    ));
}

#[test]
fn criterion_6_alpha_one_table() {
    report(&acceptance::criterion_6_alpha_one_table(DEFAULT_SEED));
}

#[test]
fn criterion_7_zero_sum_realizability() {
    report(&acceptance::criterion_7_zero_sum_realizability(&Budgets::default()));
}

#[test]
fn criterion_8_kneser_and_pigeonhole() {
    report(&acceptance::criterion_8_kneser_and_pigeonhole(DEFAULT_SEED));
}
