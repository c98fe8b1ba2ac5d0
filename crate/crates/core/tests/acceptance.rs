//! Acceptance gate: one test per shipped claim, each driving the
//! corresponding named check in `eqbif_core::verify` at full sample volume.
//! The test names state the claim; the check detail (printed on failure)
//! states what was measured.

use eqbif_core::verify;

fn run(name: &str) {
    let summary = verify::run(Some(name));
    assert_eq!(
        summary.checks.len(),
        1,
        "check name {name:?} should select exactly one check"
    );
    let check = &summary.checks[0];
    assert!(
        check.passed,
        "{name} failed after {:.2} s: {}",
        check.seconds, check.detail
    );
}

#[test]
fn criterion_01_l12_certified_case_e_with_three_branches() {
    run("l12-reduction");
}

#[test]
fn criterion_02_six_degree_table_reproduced() {
    run("section4-table");
}

#[test]
fn criterion_03_l12_ratios_match_published_coefficients() {
    run("l12-ratios");
}

#[test]
fn criterion_04_gradient_identities_exact_at_every_degree() {
    run("gradient-identities");
}

#[test]
fn criterion_05_dimension_formulas_and_plane_lists() {
    run("dims");
}

#[test]
fn criterion_06_labels_agree_with_brute_force_on_10k_systems() {
    run("random-classification");
}

#[test]
fn criterion_07_invariants_rotation_invariant_and_derivatives_match() {
    run("rotation-invariance");
}

#[test]
fn criterion_08_gradient_sign_implications_hold_on_200k_samples() {
    run("gradient-implications");
}

#[test]
fn criterion_09_equivariant_tensor_traceless_symmetric_closed() {
    run("equivariant-structure");
}

#[test]
fn criterion_10_tetrahedral_fixture_degenerate_with_two_solutions() {
    run("tetrahedral-degenerate");
}

#[test]
fn criterion_11_portrait_drift_markers_and_determinism() {
    run("portrait-integrity");
}
