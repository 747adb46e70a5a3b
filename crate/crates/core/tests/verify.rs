use ants_core::verify::{run_verify, VerifyConfig, VerifyError, GROUPS};

fn only(groups: &[&str]) -> VerifyConfig {
    VerifyConfig {
        only: groups.iter().map(|s| s.to_string()).collect(),
        ..VerifyConfig::default()
    }
}

#[test]
fn full_report_print() {
    let report = run_verify(&VerifyConfig::default()).unwrap();
    for c in &report.checks {
        println!("{:<42} {:<5} {:<30} {}", c.check_id, c.status, c.residual_or_value, c.tolerance);
    }
    let ids: Vec<_> = report.checks.iter().map(|c| c.check_id.clone()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let eq15 = report.get("eq15-structure-equations").unwrap();
    assert_eq!(eq15.residual_or_value, "0");
    assert!(eq15.passed());
}

#[test]
fn identities_are_deterministic_and_mutation_fails() {
    let a = run_verify(&only(&["identities", "quartic"])).unwrap().to_json();
    let b = run_verify(&only(&["identities", "quartic"])).unwrap().to_json();
    assert_eq!(a, b);

    let mut cfg = only(&["eq15-structure-equations"]);
    cfg.mutate_structure = true;
    let r = run_verify(&cfg).unwrap();
    assert_eq!(r.checks.len(), 1);
    assert!(!r.all_pass());
    assert_ne!(r.checks[0].residual_or_value, "0");
}

#[test]
fn selectors_filter_and_validate() {
    let r = run_verify(&only(&["chain"])).unwrap();
    assert!(!r.checks.is_empty());
    assert!(r.checks.iter().all(|c| c.group == "chain"));
    assert!(matches!(run_verify(&only(&["nope"])), Err(VerifyError::UnknownSelector(_))));
    assert_eq!(GROUPS.len(), 7);
}
