//! A deliberately broken second route to `mu` must be caught by the suite.

use hypermatch::checks::{Config, Suite};
use hypermatch::matchpoly::matching_polynomial_recursive;
use hypermatch::{Hypergraph, Result, SparsePoly};

/// Correct recursion, then one coefficient nudged once there are two edges.
fn sabotaged(h: &Hypergraph) -> Result<SparsePoly> {
    let mu = matching_polynomial_recursive(h)?;
    if h.num_edges() < 2 {
        return Ok(mu);
    }
    Ok(&mu + &SparsePoly::from_terms([(h.n() - h.k(), 1i64)]))
}

#[test]
fn sabotaged_recursion_fails_oracle_equivalence() {
    let suite = Suite::new(Config {
        recursive_mu: sabotaged,
        corpus_per_k: 10,
        ..Config::default()
    });
    let r = suite.run_one("oracle-equivalence").unwrap();
    assert!(!r.passed, "{}", r.line());
    let r = suite.run_one("k43-fixture").unwrap();
    assert!(!r.passed, "{}", r.line());
    // checks that never touch the second route are unaffected
    assert!(suite.run_one("cyclic-index").unwrap().passed);
}

#[test]
fn honest_recursion_passes_oracle_equivalence() {
    let suite = Suite::new(Config {
        corpus_per_k: 10,
        ..Config::default()
    });
    assert!(suite.run_one("oracle-equivalence").unwrap().passed);
}
