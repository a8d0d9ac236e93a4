//! One test per acceptance check, each printing its pass/fail line.
//! Run with `--nocapture` to see the lines for passing checks too.

use malle::verify::{run, CHECK_IDS};

fn criterion(id: &str) {
    let outcomes = run(Some(id)).expect("check must run to completion");
    let o = &outcomes[0];
    println!("{}: {} - {}", o.id, if o.passed { "PASS" } else { "FAIL" }, o.detail);
    assert!(o.passed, "{}: {}", o.id, o.detail);
}

#[test]
fn rad_pair_table() {
    criterion("rad-pair-table");
}

#[test]
fn merged_pair_census() {
    criterion("merged-pair-census");
}

#[test]
fn disc_grid() {
    criterion("disc-grid");
}

#[test]
fn base_swap() {
    criterion("base-swap");
}

#[test]
fn embedding_table() {
    criterion("embedding-table");
}

#[test]
fn rad_exceeds_bm() {
    criterion("rad-exceeds-bm");
}

#[test]
fn method_agreement() {
    criterion("method-agreement");
}

#[test]
fn oracle_flags() {
    criterion("oracle-flags");
}

#[test]
fn coarse_monotone() {
    criterion("coarse-monotone");
}

#[test]
fn every_check_has_a_test() {
    assert_eq!(CHECK_IDS.len(), 9);
}
