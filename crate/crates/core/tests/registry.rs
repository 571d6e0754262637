use std::collections::HashMap;

use lexleast::harness::{render_text, run_all, Context, Status, Summary};

#[test]
fn full_registry_passes() {
    let ctx = Context::default();
    let results = run_all(&ctx, None, &HashMap::new());
    println!("{}", render_text(&results));
    let summary = Summary::of(&results);
    assert_eq!(summary.exit_code(), 0);
    assert!(results.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn runs_are_deterministic() {
    let filter = Some("occ/");
    let first = run_all(&Context::default(), filter, &HashMap::new());
    let second = run_all(&Context::default(), filter, &HashMap::new());
    let key = |rs: &[lexleast::harness::CheckResult]| {
        rs.iter()
            .map(|r| (r.id, r.status, r.witness.clone()))
            .collect::<Vec<_>>()
    };
    assert_eq!(key(&first), key(&second));
}
