//! Acceptance suite: one test per property, each printing a single
//! pass/fail line. Run with `--nocapture` to see the lines.

use std::sync::OnceLock;

use hypermatch::checks::{Config, Suite};

fn suite() -> &'static Suite {
    static SUITE: OnceLock<Suite> = OnceLock::new();
    SUITE.get_or_init(|| Suite::new(Config::default()))
}

fn criterion(name: &str) {
    let r = suite().run_one(name).expect("known check");
    println!("{}", r.line());
    assert!(r.passed, "{}", r.line());
}

#[test]
fn k43_fixture() {
    criterion("k43-fixture");
}

#[test]
fn star_family() {
    criterion("star-family");
}

#[test]
fn godsil_identity() {
    criterion("godsil");
}

#[test]
fn divisibility() {
    criterion("divisibility");
}

#[test]
fn cyclic_index() {
    criterion("cyclic-index");
}

#[test]
fn simplicity() {
    criterion("simplicity");
}

#[test]
fn degree_bounds() {
    criterion("bounds");
}

#[test]
fn tensor_cross_check() {
    criterion("tensor-rho");
}

#[test]
fn alpha_normal() {
    criterion("alpha-normal");
}

#[test]
fn graph_sanity_k2() {
    criterion("k2-sanity");
}

#[test]
fn rotation() {
    criterion("rotation");
}

#[test]
fn strict_monotonicity() {
    criterion("monotonicity");
}

/// Companion lines: the two computation routes for `mu` agree, and the
/// identities hold for the deletion-ordered path tree.
#[test]
fn supplementary() {
    let mut failed = Vec::new();
    for name in ["oracle-equivalence", "godsil-ordered", "divisibility-ordered"] {
        let r = suite().run_one(name).expect("known check");
        println!("{}", r.line());
        if !r.passed {
            failed.push(r.line());
        }
    }
    assert!(failed.is_empty(), "{failed:#?}");
}
