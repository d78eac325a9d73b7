//! Coefficient-independent operator identities, verified in the free
//! differential ring (no model instance involved).

use refsusy::conditions;

#[test]
fn anticommutator_expansions_hold_identically() {
    let report = conditions::check_appendix_identities().unwrap();
    assert_eq!(report.entries.len(), 3);
    for e in &report.entries {
        assert!(e.zero, "{} failed: {}", e.name, e.detail);
    }
}

#[test]
fn dependency_identities_hold_identically() {
    let report = conditions::check_dependency_identities().unwrap();
    assert_eq!(report.entries.len(), 3);
    for e in &report.entries {
        assert!(e.zero, "{} failed: {}", e.name, e.detail);
    }
}
