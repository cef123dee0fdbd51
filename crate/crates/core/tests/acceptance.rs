//! The release gate: every numbered criterion must pass at seed 0.
//! One line per criterion is printed so failures are attributable.

use twistlab_core::selftest;

#[test]
fn acceptance_suite_passes() {
    let report = selftest::run_suite(0);
    print!("{}", report.to_text());
    for r in &report.results {
        assert!(r.passed, "{} {} failed: {}", r.id, r.name, r.details);
    }
    assert!(report.passed);
    assert_eq!(report.results.len(), 12);
}
