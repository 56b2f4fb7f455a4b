//! Matching counts and the matching polynomial
//! `mu(H, x) = sum_r (-1)^r p(H, r) x^(n - k r)`.
//!
//! Two independent routes compute `mu`:
//!
//! * [`match_counts`] enumerates matchings by branching on the smallest live
//!   vertex (unmatched, or covered by one of its live edges), memoized on the
//!   live-vertex set. Hyperforests take a rooted dynamic program instead,
//!   which is what makes path trees with thousands of vertices tractable.
//! * [`matching_polynomial_recursive`] applies the vertex-deletion recursion
//!   `mu(H) = x mu(H - u) - sum_{e ∋ u} mu(H - e)` directly on polynomials.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::SparsePoly;

pub const DEFAULT_MAX_NODES: u64 = 10_000_000;

/// Caps on the work an exact computation may do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_nodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

/// `p[r]` = number of r-matchings; `p[0] = 1` and the last entry is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchCounts {
    pub p: Vec<BigInt>,
}

impl MatchCounts {
    /// Matching number m(H).
    pub fn matching_number(&self) -> usize {
        self.p.len() - 1
    }

    fn from_dense(mut p: Vec<BigInt>) -> Self {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigInt::one());
        }
        MatchCounts { p }
    }
}

/// What a matching contributes, abstracted so the same enumeration and tree
/// recursion serve integer counts and weighted evaluations.
trait MatchAlgebra {
    type V: Clone;
    fn one(&self) -> Self::V;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    /// Factor contributed by putting edge `e` into the matching.
    fn edge(&self, e: usize) -> Self::V;
}

/// Generating-function coefficients indexed by matching size.
struct Counting;

impl MatchAlgebra for Counting {
    type V = Vec<BigInt>;

    fn one(&self) -> Vec<BigInt> {
        vec![BigInt::one()]
    }

    fn add(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short) {
            *o += s;
        }
        out
    }

    fn mul(&self, a: &Vec<BigInt>, b: &Vec<BigInt>) -> Vec<BigInt> {
        if a.len() == 1 && a[0].is_one() {
            return b.clone();
        }
        if b.len() == 1 && b[0].is_one() {
            return a.clone();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    fn edge(&self, _: usize) -> Vec<BigInt> {
        vec![BigInt::zero(), BigInt::one()]
    }
}

/// Signed weighted sum over matchings: `sum_M (-1)^|M| prod_{e in M} w_e`.
struct SignedWeights<'a>(&'a [BigRational]);

impl MatchAlgebra for SignedWeights<'_> {
    type V = BigRational;

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn edge(&self, e: usize) -> BigRational {
        -self.0[e].clone()
    }
}

/// Set of live vertices used as the memo key.
trait LiveSet: Clone + Eq + Hash {
    fn full(n: usize) -> Self;
    fn first(&self) -> Option<usize>;
    fn without(&self, v: usize) -> Self;
    fn covers(&self, edge: &Self) -> bool;
    fn minus(&self, edge: &Self) -> Self;
    fn from_vertices(n: usize, vs: &[usize]) -> Self;
}

impl LiveSet for u64 {
    fn full(n: usize) -> Self {
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }
    fn first(&self) -> Option<usize> {
        (*self != 0).then(|| self.trailing_zeros() as usize)
    }
    fn without(&self, v: usize) -> Self {
        self & !(1u64 << v)
    }
    fn covers(&self, edge: &Self) -> bool {
        edge & !self == 0
    }
    fn minus(&self, edge: &Self) -> Self {
        self & !edge
    }
    fn from_vertices(_: usize, vs: &[usize]) -> Self {
        vs.iter().fold(0, |m, &v| m | (1u64 << v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct WideSet(Vec<u64>);

impl LiveSet for WideSet {
    fn full(n: usize) -> Self {
        let mut words = vec![u64::MAX; n / 64];
        if !n.is_multiple_of(64) {
            words.push((1u64 << (n % 64)) - 1);
        }
        WideSet(words)
    }
    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
    fn without(&self, v: usize) -> Self {
        let mut out = self.clone();
        out.0[v / 64] &= !(1u64 << (v % 64));
        out
    }
    fn covers(&self, edge: &Self) -> bool {
        self.0.iter().zip(&edge.0).all(|(l, e)| e & !l == 0)
    }
    fn minus(&self, edge: &Self) -> Self {
        WideSet(self.0.iter().zip(&edge.0).map(|(l, e)| l & !e).collect())
    }
    fn from_vertices(n: usize, vs: &[usize]) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &v in vs {
            words[v / 64] |= 1u64 << (v % 64);
        }
        WideSet(words)
    }
}

struct Enumerator<'a, A: MatchAlgebra, S: LiveSet> {
    h: &'a Hypergraph,
    alg: &'a A,
    edge_sets: Vec<S>,
    memo: HashMap<S, A::V>,
    nodes: u64,
    max_nodes: u64,
}

impl<A: MatchAlgebra, S: LiveSet> Enumerator<'_, A, S> {
    fn run(&mut self, live: S) -> Result<A::V> {
        let Some(v) = live.first() else {
            return Ok(self.alg.one());
        };
        if let Some(hit) = self.memo.get(&live) {
            return Ok(hit.clone());
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::LimitExceeded(format!(
                "matching enumeration visited more than {} nodes",
                self.max_nodes
            )));
        }
        let mut acc = self.run(live.without(v))?;
        for &e in self.h.incident(v) {
            if live.covers(&self.edge_sets[e]) {
                let sub = self.run(live.minus(&self.edge_sets[e]))?;
                acc = self.alg.add(&acc, &self.alg.mul(&self.alg.edge(e), &sub));
            }
        }
        self.memo.insert(live, acc.clone());
        Ok(acc)
    }
}

fn enumerate_with<A: MatchAlgebra, S: LiveSet>(h: &Hypergraph, alg: &A, limits: &Limits) -> Result<A::V> {
    let n = h.n();
    let edge_sets = h
        .edges()
        .iter()
        .map(|e| S::from_vertices(n, e.vertices()))
        .collect();
    let mut en = Enumerator {
        h,
        alg,
        edge_sets,
        memo: HashMap::new(),
        nodes: 0,
        max_nodes: limits.max_nodes,
    };
    en.run(S::full(n))
}

fn enumerate<A: MatchAlgebra>(h: &Hypergraph, alg: &A, limits: &Limits) -> Result<A::V> {
    if h.n() <= 64 {
        enumerate_with::<A, u64>(h, alg, limits)
    } else {
        enumerate_with::<A, WideSet>(h, alg, limits)
    }
}

/// Rooted recursion over a hyperforest. For each vertex `v`, `full[v]` sums
/// over all matchings of the subtree below `v` and `free[v]` over those
/// leaving `v` uncovered.
fn forest_fold<A: MatchAlgebra>(h: &Hypergraph, alg: &A) -> A::V {
    let n = h.n();
    let mut parent_edge = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        roots.push(s);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &e in h.incident(v) {
                if e == parent_edge[v] {
                    continue;
                }
                for w in h.edges()[e].iter() {
                    if !seen[w] {
                        seen[w] = true;
                        parent_edge[w] = e;
                        queue.push_back(w);
                    }
                }
            }
        }
    }

    let mut full: Vec<Option<A::V>> = vec![None; n];
    let mut free: Vec<Option<A::V>> = vec![None; n];
    for &v in order.iter().rev() {
        let mut unmatched = alg.one();
        let mut matched: Option<A::V> = None;
        for &e in h.incident(v) {
            if e == parent_edge[v] {
                continue;
            }
            let mut prod_full = alg.one();
            let mut prod_free = alg.one();
            for w in h.edges()[e].iter().filter(|&w| w != v) {
                prod_full = alg.mul(&prod_full, full[w].as_ref().unwrap());
                prod_free = alg.mul(&prod_free, free[w].as_ref().unwrap());
                full[w] = None;
                free[w] = None;
            }
            let via_e = alg.mul(&alg.mul(&unmatched, &alg.edge(e)), &prod_free);
            matched = Some(match matched {
                None => via_e,
                Some(m) => alg.add(&alg.mul(&m, &prod_full), &via_e),
            });
            unmatched = alg.mul(&unmatched, &prod_full);
        }
        full[v] = Some(match &matched {
            None => unmatched.clone(),
            Some(m) => alg.add(&unmatched, m),
        });
        free[v] = Some(unmatched);
    }
    roots
        .iter()
        .fold(alg.one(), |acc, &r| alg.mul(&acc, full[r].as_ref().unwrap()))
}

/// Counts r-matchings for every r.
pub fn match_counts(h: &Hypergraph) -> Result<MatchCounts> {
    match_counts_with(h, &Limits::default())
}

pub fn match_counts_with(h: &Hypergraph, limits: &Limits) -> Result<MatchCounts> {
    let dense = if h.is_kforest() {
        forest_fold(h, &Counting)
    } else {
        enumerate(h, &Counting, limits)?
    };
    Ok(MatchCounts::from_dense(dense))
}

/// Counts by branching enumeration only, bypassing the forest recursion.
pub fn match_counts_enumerated(h: &Hypergraph, limits: &Limits) -> Result<MatchCounts> {
    Ok(MatchCounts::from_dense(enumerate(h, &Counting, limits)?))
}

/// `sum_r (-1)^r p_r x^(n - k r)`.
pub fn polynomial_from_counts(c: &MatchCounts, n: usize, k: usize) -> SparsePoly {
    SparsePoly::from_terms(c.p.iter().enumerate().map(|(r, p)| {
        let signed = if r % 2 == 0 { p.clone() } else { -p.clone() };
        (n - k * r, signed)
    }))
}

pub fn matching_polynomial(h: &Hypergraph) -> Result<SparsePoly> {
    matching_polynomial_with(h, &Limits::default())
}

pub fn matching_polynomial_with(h: &Hypergraph, limits: &Limits) -> Result<SparsePoly> {
    let c = match_counts_with(h, limits)?;
    Ok(polynomial_from_counts(&c, h.n(), h.k()))
}

/// Vertex-deletion recursion, pivoting on the smallest-id vertex of maximum
/// degree; memoized on the re-indexed subgraph.
pub fn matching_polynomial_recursive(h: &Hypergraph) -> Result<SparsePoly> {
    matching_polynomial_recursive_with(h, &Limits::default())
}

pub fn matching_polynomial_recursive_with(h: &Hypergraph, limits: &Limits) -> Result<SparsePoly> {
    let mut memo = HashMap::new();
    let mut nodes = 0u64;
    recurse(h, &mut memo, &mut nodes, limits.max_nodes)
}

type RecKey = (usize, Vec<Vec<usize>>);

fn recurse(
    h: &Hypergraph,
    memo: &mut HashMap<RecKey, SparsePoly>,
    nodes: &mut u64,
    max_nodes: u64,
) -> Result<SparsePoly> {
    if h.num_edges() == 0 {
        return Ok(SparsePoly::x_pow(h.n()));
    }
    let key: RecKey = (h.n(), h.edges().iter().map(|e| e.vertices().to_vec()).collect());
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    *nodes += 1;
    if *nodes > max_nodes {
        return Err(Error::LimitExceeded(format!(
            "deletion recursion visited more than {max_nodes} subgraphs"
        )));
    }
    let delta = h.max_degree();
    let u = (0..h.n()).find(|&v| h.degree(v) == delta).unwrap();
    let (minus_u, _) = h.delete_vertices(&[u])?;
    let mut out = recurse(&minus_u, memo, nodes, max_nodes)?.shift(1);
    for &e in h.incident(u) {
        let (minus_e, _) = h.delete_edge_vertices(e)?;
        out = &out - &recurse(&minus_e, memo, nodes, max_nodes)?;
    }
    memo.insert(key, out.clone());
    Ok(out)
}

/// Matching generating function `m(H, x) = sum_r p_r x^r`.
pub fn generating_function(h: &Hypergraph) -> Result<SparsePoly> {
    let c = match_counts(h)?;
    Ok(SparsePoly::from_dense(&c.p))
}

/// `mu(H, x) = x^n m(H, -x^-k)`, checked coefficient by coefficient.
pub fn check_mu_generating_identity(h: &Hypergraph) -> Result<bool> {
    let mu = matching_polynomial(h)?;
    let m = generating_function(h)?;
    let (n, k) = (h.n(), h.k());
    if mu.num_terms() != m.num_terms() {
        return Ok(false);
    }
    let ok = m.terms().all(|(r, p)| {
        if k * r > n {
            return false;
        }
        let expected = if r % 2 == 0 { p.clone() } else { -p.clone() };
        mu.coef(n - k * r) == expected
    });
    Ok(ok)
}

/// `d/dx mu(H, x) = sum_v mu(H - v, x)`.
pub fn derivative_identity_check(h: &Hypergraph) -> Result<bool> {
    let lhs = matching_polynomial(h)?.derivative();
    let mut rhs = SparsePoly::zero();
    for v in 0..h.n() {
        let (g, _) = h.delete_vertices(&[v])?;
        rhs = &rhs + &matching_polynomial(&g)?;
    }
    Ok(lhs == rhs)
}

/// `sum_M (-1)^|M| prod_{e in M} w_e` with one weight per edge.
pub fn multivariate_matching_eval(h: &Hypergraph, weights: &[BigRational]) -> Result<BigRational> {
    multivariate_matching_eval_with(h, weights, &Limits::default())
}

pub fn multivariate_matching_eval_with(
    h: &Hypergraph,
    weights: &[BigRational],
    limits: &Limits,
) -> Result<BigRational> {
    if weights.len() != h.num_edges() {
        return Err(Error::BadArity(format!(
            "{} edge weights for {} edges",
            weights.len(),
            h.num_edges()
        )));
    }
    let alg = SignedWeights(weights);
    if h.is_kforest() {
        Ok(forest_fold(h, &alg))
    } else {
        enumerate(h, &alg, limits)
    }
}

/// `p_r^2 >= p_{r-1} p_{r+1}` for `1 <= r <= m-1`.
pub fn log_concavity_check(c: &MatchCounts) -> bool {
    c.p.windows(3).all(|w| &w[1] * &w[1] >= &w[0] * &w[2])
}
