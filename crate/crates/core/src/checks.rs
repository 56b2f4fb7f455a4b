//! The bundled self-check suite: fixtures, a seeded corpus of small connected
//! k-graphs, and one check per property. Every check reports pass/fail with a
//! one-line detail; nothing here panics on a failed property.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{parse, random_connected_kgraph, random_ktree, Hypergraph, VertexId};
use crate::matchpoly::{matching_polynomial, matching_polynomial_recursive, multivariate_matching_eval};
use crate::pathtree::{
    build_path_tree_of_kind, divisibility_quotient_with, has_matching_sign_pattern, verify_godsil_with, PathTreeKind,
    TreeLimits,
};
use crate::poly::{pow_rational, SparsePoly};
use crate::tensor::alpha::{reciprocal, uniform};
use crate::tensor::{
    char_poly_tree_k2, construct_alpha_normal_tree, construct_alpha_normal_tree_near, eigen_residual, rho_lambda,
};
use crate::zeros::{
    all_roots_reduced, bounds_report, cyclic_index, default_tol, lambda_enclosure, largest_real_root,
    max_modulus_count, rotation_check_within, simplicity_check_reduced, strict_monotonicity_check, Deletion,
    IntPoly, Reduced,
};

pub type MuFn = fn(&Hypergraph) -> Result<SparsePoly>;

#[derive(Debug, Clone, Copy)]
pub struct Config {
    /// The second, independent route to `mu` that enumeration is compared
    /// against. Negative controls swap in a broken one.
    pub recursive_mu: MuFn,
    /// Accepted corpus instances per arity.
    pub corpus_per_k: usize,
    /// Instances whose nonbacktracking path tree exceeds this are replaced.
    pub tree_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            recursive_mu: matching_polynomial_recursive,
            corpus_per_k: 70,
            tree_cap: 20_000,
        }
    }
}

pub const CORPUS_ARITIES: [usize; 3] = [2, 3, 4];
pub const CORPUS_MAX_N: usize = 10;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub h: Hypergraph,
    /// Root for the path-tree checks.
    pub u: VertexId,
    pub seed: u64,
    /// `mu(H)` by enumeration.
    pub mu: SparsePoly,
}

impl CorpusEntry {
    pub fn label(&self) -> String {
        format!(
            "k={} n={} m={} seed={:#x} u={}",
            self.h.k(),
            self.h.n(),
            self.h.num_edges(),
            self.seed,
            self.u
        )
    }

    fn reduced(&self) -> Result<Reduced> {
        Reduced::from_mu(&self.mu, self.h.k())
    }
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub entries: Vec<CorpusEntry>,
    /// Candidates dropped because their path tree was over the cap.
    pub skipped: usize,
    pub build_time: Duration,
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Seeded random connected k-graphs, `k` in {2, 3, 4}, `k < n <= 10`, a few
/// edges above the connectivity minimum.
pub fn build_corpus(per_k: usize, tree_cap: usize) -> Result<Corpus> {
    let start = Instant::now();
    let mut entries = Vec::new();
    let mut skipped = 0;
    for k in CORPUS_ARITIES {
        let mut accepted = 0;
        let mut s = 0usize;
        while accepted < per_k {
            if s > 50 * per_k + 100 {
                return Err(Error::LimitExceeded(format!("too many k={k} candidates over the tree cap")));
            }
            let n = k + 1 + s % (CORPUS_MAX_N - k);
            let min_edges = (n - 1).div_ceil(k - 1);
            let m = (min_edges + s % 7).min(binomial(n, k));
            let seed = ((k as u64) << 32) | s as u64;
            let u = (7 * s + 1) % n;
            s += 1;
            let h = random_connected_kgraph(k, n, m, seed)?;
            match build_path_tree_of_kind(&h, u, tree_cap, PathTreeKind::Nonbacktracking) {
                Err(Error::LimitExceeded(_)) => {
                    skipped += 1;
                    continue;
                }
                Err(e) => return Err(e),
                Ok(_) => {}
            }
            let mu = matching_polynomial(&h)?;
            entries.push(CorpusEntry { h, u, seed, mu });
            accepted += 1;
        }
    }
    Ok(Corpus {
        entries,
        skipped,
        build_time: start.elapsed(),
    })
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    /// Informational companions to the main checks.
    pub supplementary: bool,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn line(&self) -> String {
        format!(
            "{:<22} {}  {} [{:.2}s]",
            self.name,
            if self.passed { "pass" } else { "FAIL" },
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "supplementary": self.supplementary,
            "status": if self.passed { "pass" } else { "fail" },
            "detail": self.detail,
        })
    }
}

/// Checks sharing one lazily built corpus. `Sync`, so parallel test threads
/// can share a single instance.
pub struct Suite {
    config: Config,
    corpus: OnceLock<std::result::Result<Corpus, String>>,
}

impl Suite {
    pub fn new(config: Config) -> Self {
        Suite {
            config,
            corpus: OnceLock::new(),
        }
    }

    pub fn corpus(&self) -> std::result::Result<&Corpus, String> {
        self.corpus
            .get_or_init(|| build_corpus(self.config.corpus_per_k, self.config.tree_cap).map_err(|e| e.to_string()))
            .as_ref()
            .map_err(|e| format!("corpus: {e}"))
    }

    /// Runs every check whose name contains `filter` (all when `None`), in a
    /// fixed order.
    pub fn run(&self, filter: Option<&str>) -> Vec<CheckResult> {
        CHECKS
            .iter()
            .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
            .map(|c| self.run_def(c))
            .collect()
    }

    /// The check called exactly `name`.
    pub fn run_one(&self, name: &str) -> Option<CheckResult> {
        CHECKS.iter().find(|c| c.name == name).map(|c| self.run_def(c))
    }

    fn run_def(&self, c: &CheckDef) -> CheckResult {
        let start = Instant::now();
        let (passed, detail) = match (c.run)(self) {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        CheckResult {
            name: c.name,
            supplementary: c.supplementary,
            passed,
            detail,
            elapsed: start.elapsed(),
        }
    }
}

/// `(passed, detail)`; `Err` is a failure caused by an error.
type Outcome = std::result::Result<(bool, String), String>;

struct CheckDef {
    name: &'static str,
    supplementary: bool,
    run: fn(&Suite) -> Outcome,
}

const CHECKS: &[CheckDef] = &[
    CheckDef { name: "k43-fixture", supplementary: false, run: k43_fixture },
    CheckDef { name: "star-family", supplementary: false, run: star_family },
    CheckDef { name: "godsil", supplementary: false, run: godsil_literal },
    CheckDef { name: "divisibility", supplementary: false, run: divisibility_literal },
    CheckDef { name: "cyclic-index", supplementary: false, run: cyclic },
    CheckDef { name: "simplicity", supplementary: false, run: simplicity },
    CheckDef { name: "bounds", supplementary: false, run: bounds },
    CheckDef { name: "tensor-rho", supplementary: false, run: tensor_rho },
    CheckDef { name: "alpha-normal", supplementary: false, run: alpha_normal },
    CheckDef { name: "k2-sanity", supplementary: false, run: k2_sanity },
    CheckDef { name: "rotation", supplementary: false, run: rotation },
    CheckDef { name: "monotonicity", supplementary: false, run: monotonicity },
    CheckDef { name: "oracle-equivalence", supplementary: true, run: oracle_equivalence },
    CheckDef { name: "godsil-ordered", supplementary: true, run: godsil_ordered },
    CheckDef { name: "divisibility-ordered", supplementary: true, run: divisibility_ordered },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

pub fn run_checks(config: &Config, filter: Option<&str>) -> Vec<CheckResult> {
    Suite::new(*config).run(filter)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `10^-e`.
fn ten_to_minus(e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10).pow(e))
}

fn k43() -> Hypergraph {
    parse(b"3 4\n0 1 3\n0 2 3\n1 2 3\n0 1 2").expect("fixture parses")
}

/// First few failing labels, for the detail line.
fn summarize(total: usize, failures: &[String]) -> String {
    let mut s = format!("{}/{} failed", failures.len(), total);
    if !failures.is_empty() {
        let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
        s.push_str(&format!("; e.g. {}", shown.join("; ")));
    }
    s
}

fn err(e: Error) -> String {
    e.to_string()
}

fn k43_fixture(ctx: &Suite) -> Outcome {
    let start = Instant::now();
    let h = k43();
    let want = SparsePoly::from_terms([(4usize, 1i64), (1, -4)]);
    let by_enum = matching_polynomial(&h).map_err(err)?;
    let by_rec = (ctx.config.recursive_mu)(&h).map_err(err)?;
    let tree = build_path_tree_of_kind(&h, 0, 20_000, PathTreeKind::Nonbacktracking).map_err(err)?;
    let tol = ten_to_minus(10);
    let enc = lambda_enclosure(&h, &tol).map_err(err)?;
    let four = rat(4, 1);
    let contains = pow_rational(&enc.lambda.lo, 3) <= four && four <= pow_rational(&enc.lambda.hi, 3);
    let elapsed = start.elapsed();
    let ok_mu = by_enum == want && by_rec == want;
    let ok_tree = tree.tree.n() == 19 && tree.tree.num_edges() == 9;
    let ok_lambda = enc.lambda.width() <= tol && contains;
    let ok_time = elapsed < Duration::from_secs(1);
    Ok((
        ok_mu && ok_tree && ok_lambda && ok_time,
        format!(
            "mu enum={} rec={}; tree {}v/{}e; lambda {} contains 4^(1/3): {}{}",
            by_enum,
            by_rec,
            tree.tree.n(),
            tree.tree.num_edges(),
            enc.lambda,
            contains,
            if ok_time { "" } else { "; over the 1 s budget" }
        ),
    ))
}

fn star_family(ctx: &Suite) -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for k in 2..=5usize {
        for d in 1..=6usize {
            total += 1;
            let s = Hypergraph::star(k, d).map_err(err)?;
            let top = d * (k - 1) + 1 - k;
            let closed = SparsePoly::from_terms([(top + k, BigInt::one()), (top, -BigInt::from(d))]);
            let by_enum = matching_polynomial(&s).map_err(err)?;
            let by_rec = (ctx.config.recursive_mu)(&s).map_err(err)?;
            let b = bounds_report(&s, &default_tol()).map_err(err)?;
            if by_enum != closed || by_rec != closed || !b.lower_equal || !b.lower_tight {
                failures.push(format!("S_{d} k={k}"));
            }
        }
    }
    // away from stars the flag must be off, and equality must fail
    let corpus = ctx.corpus()?;
    for e in &corpus.entries {
        total += 1;
        let b = bounds_report(&e.h, &default_tol()).map_err(err)?;
        if b.lower_equal != b.lower_tight {
            failures.push(e.label());
        }
    }
    Ok((failures.is_empty(), summarize(total, &failures)))
}

fn godsil_run(ctx: &Suite, kind: PathTreeKind) -> Outcome {
    let start = Instant::now();
    let corpus = ctx.corpus()?;
    let limits = TreeLimits {
        kind,
        max_tree_vertices: ctx.config.tree_cap,
        ..Default::default()
    };
    let mut failures = Vec::new();
    for e in &corpus.entries {
        match verify_godsil_with(&e.h, e.u, &limits) {
            Ok(true) => {}
            Ok(false) => failures.push(e.label()),
            Err(x) => failures.push(format!("{}: {x}", e.label())),
        }
    }
    let total_time = start.elapsed() + corpus.build_time;
    let ok_time = total_time < Duration::from_secs(300);
    Ok((
        failures.is_empty() && ok_time && corpus.entries.len() >= 200,
        format!(
            "{} tree: {}; {} over cap replaced{}",
            kind_name(kind),
            summarize(corpus.entries.len(), &failures),
            corpus.skipped,
            if ok_time { "" } else { "; over the 5 min budget" }
        ),
    ))
}

fn kind_name(kind: PathTreeKind) -> &'static str {
    match kind {
        PathTreeKind::Nonbacktracking => "nonbacktracking",
        PathTreeKind::DeletionOrdered => "deletion-ordered",
    }
}

fn divisibility_run(ctx: &Suite, kind: PathTreeKind) -> Outcome {
    let corpus = ctx.corpus()?;
    let limits = TreeLimits {
        kind,
        max_tree_vertices: ctx.config.tree_cap,
        ..Default::default()
    };
    let mut failures = Vec::new();
    for e in &corpus.entries {
        match divisibility_quotient_with(&e.h, e.u, &limits) {
            Ok(q) if has_matching_sign_pattern(&q, e.h.k()) => {}
            Ok(_) => failures.push(format!("{}: quotient sign pattern", e.label())),
            Err(x) => failures.push(format!("{}: {x}", e.label())),
        }
    }
    Ok((
        failures.is_empty(),
        format!("{} tree: {}", kind_name(kind), summarize(corpus.entries.len(), &failures)),
    ))
}

fn godsil_literal(ctx: &Suite) -> Outcome {
    godsil_run(ctx, PathTreeKind::Nonbacktracking)
}

fn godsil_ordered(ctx: &Suite) -> Outcome {
    godsil_run(ctx, PathTreeKind::DeletionOrdered)
}

fn divisibility_literal(ctx: &Suite) -> Outcome {
    divisibility_run(ctx, PathTreeKind::Nonbacktracking)
}

fn divisibility_ordered(ctx: &Suite) -> Outcome {
    divisibility_run(ctx, PathTreeKind::DeletionOrdered)
}

/// Applies `test` to every corpus entry and collects the labels it rejects.
fn over_corpus(ctx: &Suite, test: impl Fn(&CorpusEntry) -> Result<bool>) -> Outcome {
    let corpus = ctx.corpus()?;
    let mut failures = Vec::new();
    let mut total = 0;
    for e in &corpus.entries {
        total += 1;
        match test(e) {
            Ok(true) => {}
            Ok(false) => failures.push(e.label()),
            Err(x) => failures.push(format!("{}: {x}", e.label())),
        }
    }
    Ok((failures.is_empty(), summarize(total, &failures)))
}

fn cyclic(ctx: &Suite) -> Outcome {
    over_corpus(ctx, |e| Ok(cyclic_index(&e.mu) == e.h.k()))
}

fn simplicity(ctx: &Suite) -> Outcome {
    over_corpus(ctx, |e| simplicity_check_reduced(&e.reduced()?))
}

fn bounds(ctx: &Suite) -> Outcome {
    over_corpus(ctx, |e| {
        if e.h.max_degree() < 2 {
            return Ok(true);
        }
        let b = bounds_report(&e.h, &default_tol())?;
        Ok(b.lower_ok && b.upper_ok == Some(true))
    })
}

fn tensor_rho(_: &Suite) -> Outcome {
    let mut failures = Vec::new();
    let mut worst_diff = 0.0f64;
    let mut worst_res = 0.0f64;
    for i in 0..50u64 {
        let k = 2 + (i % 4) as usize;
        let m = 1 + (3 * i % 10) as usize;
        let t = random_ktree(k, m, 0xA000 + i).map_err(err)?;
        let r = rho_lambda(&t, 1e-6).map_err(err)?;
        let res = eigen_residual(&t, r.nqz.rho(), &r.nqz.x).map_err(err)?;
        worst_diff = worst_diff.max(r.difference);
        worst_res = worst_res.max(res);
        if r.difference > 1e-6 || res > 1e-8 {
            failures.push(format!("k={k} m={m} seed={:#x}", 0xA000 + i));
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "{}; max |lambda - rho| = {worst_diff:.2e}, max residual = {worst_res:.2e}",
            summarize(50, &failures)
        ),
    ))
}

fn alpha_normal(_: &Suite) -> Outcome {
    let mut failures = Vec::new();
    let mut total = 0;
    for k in 2..=5usize {
        for d in 1..=6usize {
            total += 1;
            let s = Hypergraph::star(k, d).map_err(err)?;
            let c = construct_alpha_normal_tree(&s, &uniform(&s, &rat(1, d as i64))).map_err(err)?;
            if !(c.report.c1_ok && c.report.c2_ok && c.edges.len() == d) {
                failures.push(format!("S_{d} k={k}"));
            }
        }
        total += 1;
        let edge = Hypergraph::complete(k, k).map_err(err)?;
        let c = construct_alpha_normal_tree(&edge, &[rat(1, 1)]).map_err(err)?;
        if !(c.report.c1_ok && c.report.c2_ok) {
            failures.push(format!("single edge k={k}"));
        }
    }

    let ytol = ten_to_minus(20);
    let c_tol = ten_to_minus(8);
    let mu_tol = ten_to_minus(15);
    let mut worst = BigRational::from_integer(0.into());
    for i in 0..20u64 {
        total += 1;
        let k = 2 + (i % 4) as usize;
        let m = 2 + (i % 7) as usize;
        let seed = 0xC000 + i;
        let t = random_ktree(k, m, seed).map_err(err)?;
        let r = Reduced::of(&t).map_err(err)?;
        let y = largest_real_root(&IntPoly::from_sparse(&r.q), &ytol).map_err(err)?;
        let alpha = uniform(&t, &reciprocal(&y.midpoint()));
        let c = construct_alpha_normal_tree_near(&t, &alpha).map_err(err)?;
        let value = multivariate_matching_eval(&t, &alpha).map_err(err)?.abs();
        let dev = c.report.c1_max_dev.clone().max(c.report.c2_max_dev.clone());
        if dev > worst {
            worst = dev.clone();
        }
        if dev > c_tol || value > mu_tol {
            failures.push(format!("k={k} m={m} seed={seed:#x}"));
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "{}; worst C1/C2 deviation on surrogates {:.2e}",
            summarize(total, &failures),
            worst.to_f64().unwrap_or(f64::NAN)
        ),
    ))
}

fn k2_sanity(ctx: &Suite) -> Outcome {
    let mut failures = Vec::new();
    for i in 0..100u64 {
        let m = 1 + (i % 11) as usize;
        let t = random_ktree(2, m, 0xB000 + i).map_err(err)?;
        if matching_polynomial(&t).map_err(err)? != char_poly_tree_k2(&t).map_err(err)? {
            failures.push(format!("tree n={} seed={:#x}", m + 1, 0xB000 + i));
        }
    }
    let corpus = ctx.corpus()?;
    let mut graphs = 0;
    for e in corpus.entries.iter().filter(|e| e.h.k() == 2) {
        graphs += 1;
        let roots = all_roots_reduced(&e.reduced().map_err(err)?, 1e-12).map_err(err)?;
        let delta = e.h.max_degree();
        let bound = 2.0 * ((delta.max(1) - 1) as f64).sqrt() + 1e-6;
        let real = roots.roots.iter().all(|z| z.im.abs() <= 1e-8);
        let bounded = delta < 2 || roots.roots.iter().all(|z| z.norm() < bound);
        if !(real && bounded) {
            failures.push(e.label());
        }
    }
    Ok((failures.is_empty(), summarize(100 + graphs, &failures)))
}

fn rotation(ctx: &Suite) -> Outcome {
    over_corpus(ctx, |e| {
        let roots = all_roots_reduced(&e.reduced()?, 1e-12)?;
        Ok(rotation_check_within(&roots, 1e-6) && max_modulus_count(&roots, 1e-6) == e.h.k())
    })
}

fn monotonicity(ctx: &Suite) -> Outcome {
    let corpus = ctx.corpus()?;
    let mut failures = Vec::new();
    let pairs = corpus.entries.len().min(100);
    for (i, e) in corpus.entries.iter().take(pairs).enumerate() {
        let v = (e.u + i) % e.h.n();
        match strict_monotonicity_check(&e.h, &Deletion::Vertices(vec![v])) {
            Ok(true) => {}
            Ok(false) => failures.push(format!("{} v={v}", e.label())),
            Err(x) => failures.push(format!("{} v={v}: {x}", e.label())),
        }
    }
    Ok((failures.is_empty() && pairs == 100, summarize(pairs, &failures)))
}

fn oracle_equivalence(ctx: &Suite) -> Outcome {
    let mut fixtures = vec![k43()];
    for k in 2..=4 {
        fixtures.push(Hypergraph::star(k, 3).map_err(err)?);
        fixtures.push(Hypergraph::complete(k + 3, k).map_err(err)?);
    }
    let mut failures = Vec::new();
    let mut total = 0;
    for h in &fixtures {
        total += 1;
        if matching_polynomial(h).map_err(err)? != (ctx.config.recursive_mu)(h).map_err(err)? {
            failures.push(format!("fixture k={} n={} m={}", h.k(), h.n(), h.num_edges()));
        }
    }
    for e in &ctx.corpus()?.entries {
        total += 1;
        match (ctx.config.recursive_mu)(&e.h) {
            Ok(p) if p == e.mu => {}
            Ok(_) => failures.push(e.label()),
            Err(x) => failures.push(format!("{}: {x}", e.label())),
        }
    }
    Ok((failures.is_empty(), format!("enumeration vs recursion: {}", summarize(total, &failures))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_connected() {
        let a = build_corpus(5, 20_000).unwrap();
        let b = build_corpus(5, 20_000).unwrap();
        assert_eq!(a.entries.len(), 15);
        for (x, y) in a.entries.iter().zip(&b.entries) {
            assert_eq!(x.h, y.h);
            assert_eq!(x.u, y.u);
            assert!(x.h.is_connected() && x.h.n() <= CORPUS_MAX_N);
        }
    }

    #[test]
    fn filter_selects_by_name() {
        let r = run_checks(&Config::default(), Some("k43"));
        assert_eq!(r.len(), 1);
        assert!(r[0].passed, "{}", r[0].line());
        assert!(run_checks(&Config::default(), Some("no-such-check")).is_empty());
    }

    #[test]
    fn names_listed() {
        let names = check_names();
        assert_eq!(names.len(), 15);
        assert!(names.contains(&"bounds"));
    }
}
