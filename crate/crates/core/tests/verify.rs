//! Reproducibility of the verify runner.

use canonical_bessel::verify::{self, VerifyOptions, VerifyReport};

const QUICK: [&str; 4] = ["heat.semigroup", "specfun.regime_agreement", "transform.kernel_eigen", "translation.product_formula"];

fn quick(seed: u64) -> VerifyReport {
    verify::run_verify(Some(QUICK.iter().map(|s| s.to_string()).collect()), seed).unwrap()
}

/// Everything but the timings.
fn fingerprint(report: &VerifyReport) -> Vec<(String, u64, u64, bool)> {
    report.entries.iter().map(|e| (e.check_id.clone(), e.max_error.to_bits(), e.tolerance.to_bits(), e.pass)).collect()
}

#[test]
fn same_seed_gives_the_same_report() {
    assert_eq!(fingerprint(&quick(11)), fingerprint(&quick(11)));
}

#[test]
fn each_check_draws_from_its_own_stream() {
    // running a check alone or with others must not change its draws
    let together = quick(5);
    let alone = verify::run_verify(Some(vec!["transform.kernel_eigen".into()]), 5).unwrap();
    assert_eq!(alone.entries.len(), 1);
    let a = &alone.entries[0];
    let b = together.entry("transform.kernel_eigen").unwrap();
    assert_eq!(a.max_error.to_bits(), b.max_error.to_bits());
}

#[test]
fn different_seeds_draw_different_cases() {
    let a = quick(1);
    let b = quick(2);
    assert!(a.all_pass() && b.all_pass());
    assert_ne!(fingerprint(&a), fingerprint(&b));
}

#[test]
fn a_tightened_tolerance_fails_the_check() {
    let options = VerifyOptions {
        selection: Some(vec!["heat.semigroup".into()]),
        seed: 3,
        tolerance_overrides: [("heat.semigroup".to_string(), 0.0)].into_iter().collect(),
        ..VerifyOptions::default()
    };
    let report = verify::run_verify_with(&options).unwrap();
    assert!(!report.all_pass());
    assert!(report.to_json().contains("\"pass\": false"));
}
