//! The twelve acceptance criteria, one line each.

use std::io::Write;

use twisted_bruhat::verify::{run_criterion, CRITERIA};

#[test]
fn acceptance() {
    // Written to the raw handle so the lines show up even when output is captured.
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err);
    let mut failed = Vec::new();
    for (id, _) in CRITERIA {
        let r = run_criterion(id, 2024).expect("no certification failure");
        let _ = writeln!(err, "{r}");
        if !r.passed {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
