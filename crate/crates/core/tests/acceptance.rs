//! The ten acceptance criteria, one line each.

use cvect_core::verify::acceptance;

#[test]
fn acceptance_criteria() {
    let outcomes = acceptance();
    for o in &outcomes {
        println!("{o}");
    }
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name.as_str()).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
