//! The ten reproduction criteria, each checked exactly.

use replab::suite::run_criterion;

fn criterion(id: usize) {
    let r = run_criterion(id);
    println!("{r}");
    assert!(r.passed(), "{r}");
}

#[test]
fn c01_symplectic_decompositions() {
    criterion(1);
}

#[test]
fn c02_sl_tensor_powers() {
    criterion(2);
}

#[test]
fn c03_free_lie() {
    criterion(3);
}

#[test]
fn c04_symplectic_coefficients() {
    criterion(4);
}

#[test]
fn c05_johnson_spans() {
    criterion(5);
}

#[test]
fn c06_cup_images() {
    criterion(6);
}

#[test]
fn c07_comparison_table() {
    criterion(7);
}

#[test]
fn c08_branching() {
    criterion(8);
}

#[test]
fn c09_property_suites() {
    criterion(9);
}

#[test]
fn c10_bookkeeping() {
    criterion(10);
}
