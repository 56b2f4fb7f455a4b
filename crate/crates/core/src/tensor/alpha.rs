//! Generalized alpha-normal labellings.
//!
//! A weighted incidence matrix `B` (nonzero exactly on incidences) makes `H`
//! generalized `{alpha_e}`-normal when every vertex row sums to 1 (C1) and
//! every edge column multiplies to `alpha_e` (C2); it is consistent when the
//! ratio product around every cycle is 1 (C3).
//!
//! For k-trees, [`construct_alpha_normal_tree`] peels pendent stars off the
//! tree, rescaling the weight of the edge each star hangs from, until either
//! one edge is left or a star whose weights sum to exactly 1 turns up. The
//! labelling is then rebuilt in reverse.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::matchpoly::multivariate_matching_eval;
use crate::poly::parse_rational;

/// `B(v, e)`, keyed by `(vertex, edge index)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightedIncidence {
    pub entries: BTreeMap<(VertexId, usize), BigRational>,
}

impl WeightedIncidence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: VertexId, e: usize) -> Option<&BigRational> {
        self.entries.get(&(v, e))
    }

    pub fn set(&mut self, v: VertexId, e: usize, w: BigRational) {
        self.entries.insert((v, e), w);
    }

    /// Weight 1 on every incidence of `h`.
    pub fn ones(h: &Hypergraph) -> Self {
        let mut b = Self::new();
        for (e, edge) in h.edges().iter().enumerate() {
            for v in edge.iter() {
                b.set(v, e, BigRational::one());
            }
        }
        b
    }

    fn get_or_err(&self, v: VertexId, e: usize) -> Result<&BigRational> {
        self.get(v, e)
            .ok_or_else(|| Error::BadCertificate(format!("no weight on incidence ({v}, {e})")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaNormalReport {
    pub c1_ok: bool,
    pub c2_ok: bool,
    pub c3_ok: bool,
    /// `max_v |sum_e B(v, e) - 1|`.
    pub c1_max_dev: BigRational,
    /// `max_e |prod_v B(v, e) - alpha_e|`.
    pub c2_max_dev: BigRational,
    /// Largest relative deviation of `B` from a product of vertex and edge
    /// potentials; zero exactly when every cycle ratio product is 1.
    pub c3_max_dev: BigRational,
}

impl AlphaNormalReport {
    pub fn all_ok(&self) -> bool {
        self.c1_ok && self.c2_ok && self.c3_ok
    }

    pub fn to_json(&self) -> Value {
        json!({
            "c1_ok": self.c1_ok,
            "c2_ok": self.c2_ok,
            "c3_ok": self.c3_ok,
            "c1_max_dev": self.c1_max_dev.to_string(),
            "c2_max_dev": self.c2_max_dev.to_string(),
            "c3_max_dev": self.c3_max_dev.to_string(),
        })
    }
}

/// Checks C1-C3 with tolerance `tau` (0 for exact comparison).
pub fn verify_alpha_normal(
    h: &Hypergraph,
    b: &WeightedIncidence,
    alpha: &[BigRational],
    tau: &BigRational,
) -> Result<AlphaNormalReport> {
    if alpha.len() != h.num_edges() {
        return Err(Error::BadCertificate(format!(
            "{} edge weights for {} edges",
            alpha.len(),
            h.num_edges()
        )));
    }
    if let Some(e) = alpha.iter().position(Zero::is_zero) {
        return Err(Error::BadCertificate(format!("alpha of edge {e} is zero")));
    }
    for (&(v, e), w) in &b.entries {
        if e >= h.num_edges() || !h.edges()[e].contains(v) {
            return Err(Error::BadCertificate(format!("weight on non-incidence ({v}, {e})")));
        }
        if w.is_zero() {
            return Err(Error::BadCertificate(format!("zero weight on incidence ({v}, {e})")));
        }
    }

    let mut c1_max_dev = BigRational::zero();
    for v in 0..h.n() {
        let mut sum = BigRational::zero();
        for &e in h.incident(v) {
            sum += b.get_or_err(v, e)?;
        }
        c1_max_dev = c1_max_dev.max((sum - BigRational::one()).abs());
    }
    let mut c2_max_dev = BigRational::zero();
    for (e, edge) in h.edges().iter().enumerate() {
        let mut prod = BigRational::one();
        for v in edge.iter() {
            prod *= b.get_or_err(v, e)?;
        }
        c2_max_dev = c2_max_dev.max((prod - &alpha[e]).abs());
    }
    let c3_max_dev = potential_deviation(h, b)?;
    Ok(AlphaNormalReport {
        c1_ok: c1_max_dev <= *tau,
        c2_ok: c2_max_dev <= *tau,
        c3_ok: c3_max_dev <= *tau,
        c1_max_dev,
        c2_max_dev,
        c3_max_dev,
    })
}

/// Fits `B(v, e) = phi_v psi_e` along a spanning forest of the vertex-edge
/// incidence graph and reports the worst relative misfit off the forest.
fn potential_deviation(h: &Hypergraph, b: &WeightedIncidence) -> Result<BigRational> {
    let n = h.n();
    let mut phi: Vec<Option<BigRational>> = vec![None; n];
    let mut psi: Vec<Option<BigRational>> = vec![None; h.num_edges()];
    for root in 0..n {
        if phi[root].is_some() {
            continue;
        }
        phi[root] = Some(BigRational::one());
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let pv = phi[v].clone().unwrap();
            for &e in h.incident(v) {
                if psi[e].is_some() {
                    continue;
                }
                let pe = b.get_or_err(v, e)? / &pv;
                for w in h.edges()[e].iter() {
                    if phi[w].is_none() {
                        phi[w] = Some(b.get_or_err(w, e)? / &pe);
                        queue.push_back(w);
                    }
                }
                psi[e] = Some(pe);
            }
        }
    }
    let mut worst = BigRational::zero();
    for (e, edge) in h.edges().iter().enumerate() {
        let pe = psi[e].as_ref().expect("every edge is reached");
        for v in edge.iter() {
            let w = b.get_or_err(v, e)?;
            let fit = phi[v].as_ref().unwrap() * pe;
            worst = worst.max(((w - fit) / w).abs());
        }
    }
    Ok(worst)
}

/// One reduction: the pendent star `p` at `u` is removed and `f` rescaled by
/// `1 / (1 - c)`, `c = sum_{g in p} alpha_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep {
    /// Number of edges left before this step.
    pub tree_edges: usize,
    pub u: VertexId,
    pub p: Vec<usize>,
    pub f: usize,
    pub c: BigRational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// Reduced to a single edge; the labelling covers the whole tree.
    SingleEdge,
    /// Stopped at a star whose weights sum to 1; the labelling covers the
    /// subtree grown back from that star.
    InadmissibleStar,
}

#[derive(Debug, Clone)]
pub struct AlphaNormalConstruction {
    /// Edges of the subtree `F`, as indices into the input tree, ascending.
    pub edges: Vec<usize>,
    /// Labelling of `F` in the input tree's ids.
    pub b: WeightedIncidence,
    /// Input weights of the edges of `F`.
    pub alpha: BTreeMap<usize, BigRational>,
    /// Admissible reductions in order; for `InadmissibleStar` the last entry
    /// is the inadmissible star itself.
    pub trace: Vec<ReductionStep>,
    pub outcome: Outcome,
    /// Verification of `b` on `F`, compared exactly.
    pub report: AlphaNormalReport,
}

impl AlphaNormalConstruction {
    /// `F` re-indexed, with `B` and `alpha` carried over.
    pub fn subtree(&self, t: &Hypergraph) -> Result<(Hypergraph, WeightedIncidence, Vec<BigRational>)> {
        restrict(t, &self.edges, &self.b, &self.alpha)
    }

    /// `{"alpha":{edge:"p/q"},"B":[{"v","e","w"}],"trace":[{"u","P","f","c"}],...}`
    pub fn to_json(&self) -> Value {
        let alpha: Map<String, Value> = self
            .alpha
            .iter()
            .map(|(e, a)| (e.to_string(), Value::String(a.to_string())))
            .collect();
        let b: Vec<Value> = self
            .b
            .entries
            .iter()
            .map(|(&(v, e), w)| json!({"v": v, "e": e, "w": w.to_string()}))
            .collect();
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|s| json!({"u": s.u, "P": s.p, "f": s.f, "c": s.c.to_string()}))
            .collect();
        json!({
            "alpha": alpha,
            "B": b,
            "trace": trace,
            "outcome": match self.outcome {
                Outcome::SingleEdge => "single-edge",
                Outcome::InadmissibleStar => "inadmissible-star",
            },
            "report": self.report.to_json(),
        })
    }
}

fn restrict(
    t: &Hypergraph,
    edges: &[usize],
    b: &WeightedIncidence,
    alpha: &BTreeMap<usize, BigRational>,
) -> Result<(Hypergraph, WeightedIncidence, Vec<BigRational>)> {
    let (f, map) = t.edge_subgraph(edges)?;
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let new_edge: BTreeMap<usize, usize> = sorted.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let mut fb = WeightedIncidence::new();
    for (&(v, e), w) in &b.entries {
        let (Some(&ne), Some(Some(nv))) = (new_edge.get(&e), map.old_to_new.get(v)) else {
            return Err(Error::BadCertificate(format!("weight on ({v}, {e}) outside the subtree")));
        };
        fb.set(*nv, ne, w.clone());
    }
    let fa = sorted
        .iter()
        .map(|e| {
            alpha
                .get(e)
                .cloned()
                .ok_or_else(|| Error::BadCertificate(format!("no alpha for edge {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((f, fb, fa))
}

/// Reads a certificate in the JSON layout of
/// [`AlphaNormalConstruction::to_json`] and verifies it on the subtree of
/// `t` spanned by the edges its `alpha` map names. Weights may be `p/q`
/// strings or decimals; decimals are taken at their exact value.
pub fn verify_certificate(t: &Hypergraph, cert: &Value, tau: &BigRational) -> Result<AlphaNormalReport> {
    let bad = |m: &str| Error::BadCertificate(m.to_string());
    let alpha_obj = cert["alpha"].as_object().ok_or_else(|| bad("missing alpha map"))?;
    let mut alpha = BTreeMap::new();
    for (k, v) in alpha_obj {
        let e: usize = k.parse().map_err(|_| bad("edge keys must be integers"))?;
        alpha.insert(e, weight_value(v)?);
    }
    let mut b = WeightedIncidence::new();
    for entry in cert["B"].as_array().ok_or_else(|| bad("missing B list"))? {
        let v = entry["v"].as_u64().ok_or_else(|| bad("B entry without v"))? as usize;
        let e = entry["e"].as_u64().ok_or_else(|| bad("B entry without e"))? as usize;
        b.set(v, e, weight_value(&entry["w"])?);
    }
    let edges: Vec<usize> = alpha.keys().copied().collect();
    if edges.iter().any(|&e| e >= t.num_edges()) {
        return Err(bad("alpha names an edge outside the tree"));
    }
    let (f, fb, fa) = restrict(t, &edges, &b, &alpha)?;
    verify_alpha_normal(&f, &fb, &fa, tau)
}

fn weight_value(v: &Value) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        _ => Err(Error::BadCertificate(format!("weight {v} is not a number"))),
    }
}

/// Exact construction: fails with `NotARoot` when the tree reduces to a
/// single edge whose rescaled weight is not 1.
pub fn construct_alpha_normal_tree(t: &Hypergraph, alpha: &[BigRational]) -> Result<AlphaNormalConstruction> {
    construct(t, alpha, false)
}

/// Like [`construct_alpha_normal_tree`], but when the final single edge has
/// rescaled weight `a != 1` it still labels that edge (with `a` at its
/// smallest vertex), yielding a near-certificate whose defects are reported.
/// Intended for rational approximations of irrational roots.
pub fn construct_alpha_normal_tree_near(t: &Hypergraph, alpha: &[BigRational]) -> Result<AlphaNormalConstruction> {
    construct(t, alpha, true)
}

/// Edge-set view of a shrinking k-tree.
struct Shrinking<'a> {
    t: &'a Hypergraph,
    live: BTreeSet<usize>,
}

impl Shrinking<'_> {
    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.t.n()];
        for &e in &self.live {
            for v in self.t.edges()[e].iter() {
                d[v] += 1;
            }
        }
        d
    }

    fn live_at(&self, v: VertexId) -> impl Iterator<Item = usize> + '_ {
        self.t.incident(v).iter().copied().filter(|e| self.live.contains(e))
    }

    /// `N(T)` in increasing id, with each vertex's split `(P, f)`.
    fn candidates(&self) -> Vec<(VertexId, Vec<usize>, usize)> {
        let deg = self.degrees();
        let k = self.t.k();
        let pendent = |e: usize| self.t.edges()[e].iter().filter(|&v| deg[v] == 1).count() == k - 1;
        let mut out = Vec::new();
        for (v, &d) in deg.iter().enumerate() {
            if d < 2 {
                continue;
            }
            let (pend, other): (Vec<usize>, Vec<usize>) = self.live_at(v).partition(|&e| pendent(e));
            match other.as_slice() {
                [] => {
                    let (f, p) = pend.split_last().expect("degree at least 2");
                    out.push((v, p.to_vec(), *f));
                }
                [f] => out.push((v, pend, *f)),
                _ => {}
            }
        }
        out
    }
}

fn construct(t: &Hypergraph, alpha: &[BigRational], near: bool) -> Result<AlphaNormalConstruction> {
    if !t.is_ktree() {
        return Err(Error::Precondition("input is not a k-tree".into()));
    }
    if alpha.len() != t.num_edges() {
        return Err(Error::BadArity(format!(
            "{} edge weights for {} edges",
            alpha.len(),
            t.num_edges()
        )));
    }
    if let Some(e) = alpha.iter().position(Zero::is_zero) {
        return Err(Error::BadCertificate(format!("alpha of edge {e} is zero")));
    }
    let one = BigRational::one();
    let mut cur = alpha.to_vec();
    let mut tree = Shrinking {
        t,
        live: (0..t.num_edges()).collect(),
    };
    let mut trace = Vec::new();

    let outcome = loop {
        if tree.live.len() == 1 {
            break Outcome::SingleEdge;
        }
        let cands = tree.candidates();
        if cands.is_empty() {
            return Err(Error::Precondition("no reducible vertex in a tree with several edges".into()));
        }
        let sum = |p: &[usize]| p.iter().fold(BigRational::zero(), |s, &g| s + &cur[g]);
        if let Some((u, p, f)) = cands.iter().find(|(_, p, _)| sum(p) == one) {
            trace.push(ReductionStep {
                tree_edges: tree.live.len(),
                u: *u,
                p: p.clone(),
                f: *f,
                c: one.clone(),
            });
            break Outcome::InadmissibleStar;
        }
        let (u, p, f) = cands.into_iter().next().unwrap();
        let c = sum(&p);
        cur[f] = &cur[f] / (&one - &c);
        for g in &p {
            tree.live.remove(g);
        }
        trace.push(ReductionStep {
            tree_edges: tree.live.len() + p.len(),
            u,
            p,
            f,
            c,
        });
    };

    // base labelling
    let mut b = WeightedIncidence::new();
    let mut in_f: BTreeSet<usize> = BTreeSet::new();
    let label_star = |b: &mut WeightedIncidence, in_f: &mut BTreeSet<usize>, u: VertexId, p: &[usize]| {
        for &g in p {
            for v in t.edges()[g].iter() {
                b.set(v, g, if v == u { cur[g].clone() } else { one.clone() });
            }
            in_f.insert(g);
        }
    };
    let unwind_from = match outcome {
        Outcome::SingleEdge => {
            let last = *tree.live.iter().next().unwrap();
            let a = &cur[last];
            if *a != one && !near {
                let value = multivariate_matching_eval(t, alpha)?;
                return Err(Error::NotARoot(value.to_string()));
            }
            let lead = t.edges()[last].vertices()[0];
            for v in t.edges()[last].iter() {
                b.set(v, last, if v == lead { a.clone() } else { one.clone() });
            }
            in_f.insert(last);
            trace.len()
        }
        Outcome::InadmissibleStar => {
            let s = trace.last().unwrap();
            label_star(&mut b, &mut in_f, s.u, &s.p);
            trace.len() - 1
        }
    };
    for step in trace[..unwind_from].iter().rev() {
        if !in_f.contains(&step.f) {
            continue;
        }
        let w = b.get(step.u, step.f).cloned().expect("u lies on f");
        b.set(step.u, step.f, w * (&one - &step.c));
        label_star(&mut b, &mut in_f, step.u, &step.p);
    }

    let edges: Vec<usize> = in_f.into_iter().collect();
    let alpha_f: BTreeMap<usize, BigRational> = edges.iter().map(|&e| (e, alpha[e].clone())).collect();
    let (f, fb, fa) = restrict(t, &edges, &b, &alpha_f)?;
    let report = verify_alpha_normal(&f, &fb, &fa, &BigRational::zero())?;
    if !near && !report.all_ok() {
        return Err(Error::BadCertificate("constructed labelling failed verification".into()));
    }
    Ok(AlphaNormalConstruction {
        edges,
        b,
        alpha: alpha_f,
        trace,
        outcome,
        report,
    })
}

/// `1 / y` as an exact rational.
pub fn reciprocal(y: &BigRational) -> BigRational {
    BigRational::new(y.denom().clone(), y.numer().clone())
}

/// The constant sequence `alpha` on every edge of `t`.
pub fn uniform(t: &Hypergraph, alpha: &BigRational) -> Vec<BigRational> {
    vec![alpha.clone(); t.num_edges()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{parse, random_ktree};
    use crate::zeros::lambda_enclosure;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn verifier_examples() {
        let zero = BigRational::zero();
        let edge = Hypergraph::complete(3, 3).unwrap();
        let r = verify_alpha_normal(&edge, &WeightedIncidence::ones(&edge), &[rat(1, 1)], &zero).unwrap();
        assert!(r.all_ok());

        // S_2 with center weights 0.4 and 0.7
        let s2 = Hypergraph::star(3, 2).unwrap();
        let mut b = WeightedIncidence::ones(&s2);
        b.set(0, 0, rat(2, 5));
        b.set(0, 1, rat(7, 10));
        let r = verify_alpha_normal(&s2, &b, &[rat(2, 5), rat(7, 10)], &zero).unwrap();
        assert!(!r.c1_ok && r.c2_ok && r.c3_ok);
        assert_eq!(r.c1_max_dev, rat(1, 10));
        let r = verify_alpha_normal(&s2, &b, &[rat(2, 5), rat(7, 10)], &rat(1, 5)).unwrap();
        assert!(r.c1_ok);

        b.set(3, 0, rat(1, 1));
        assert!(matches!(
            verify_alpha_normal(&s2, &b, &[rat(2, 5), rat(7, 10)], &zero),
            Err(Error::BadCertificate(_))
        ));
    }

    #[test]
    fn consistency_on_a_cycle() {
        // two 3-edges sharing two vertices form a cycle 0 e0 1 e1 0
        let h = Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        let mut b = WeightedIncidence::ones(&h);
        let alpha = [rat(1, 1), rat(1, 1)];
        assert!(verify_alpha_normal(&h, &b, &alpha, &BigRational::zero()).unwrap().c3_ok);
        b.set(0, 0, rat(2, 1));
        b.set(2, 0, rat(1, 2));
        let r = verify_alpha_normal(&h, &b, &alpha, &BigRational::zero()).unwrap();
        assert!(r.c2_ok && !r.c3_ok);
    }

    #[test]
    fn stars_with_reciprocal_degree() {
        for k in 2..=5 {
            for d in 1..=6usize {
                let s = Hypergraph::star(k, d).unwrap();
                let c = construct_alpha_normal_tree(&s, &uniform(&s, &rat(1, d as i64))).unwrap();
                assert!(c.report.all_ok());
                assert_eq!(c.edges.len(), d);
                for e in 0..d {
                    assert_eq!(c.b.get(0, e), Some(&rat(1, d as i64)));
                }
            }
        }
    }

    #[test]
    fn single_edge() {
        let edge = Hypergraph::complete(4, 4).unwrap();
        let c = construct_alpha_normal_tree(&edge, &[rat(1, 1)]).unwrap();
        assert_eq!(c.outcome, Outcome::SingleEdge);
        assert_eq!(c.b, WeightedIncidence::ones(&edge));
        assert!(matches!(construct_alpha_normal_tree(&edge, &[rat(1, 2)]), Err(Error::NotARoot(_))));
        assert!(matches!(construct_alpha_normal_tree(&edge, &[rat(0, 1)]), Err(Error::BadCertificate(_))));
    }

    #[test]
    fn inadmissible_star_stops_early() {
        // center 0 carries e1, e2 pendent and e0 leading to the pendent e3
        let t = parse(b"3 9\n0 1 2\n0 3 4\n0 5 6\n1 7 8").unwrap();
        let c = construct_alpha_normal_tree(&t, &uniform(&t, &rat(1, 2))).unwrap();
        assert_eq!(c.outcome, Outcome::InadmissibleStar);
        assert_eq!(c.edges, vec![1, 2]);
        assert_eq!(c.trace.len(), 1);
        assert_eq!((c.trace[0].u, c.trace[0].f), (0, 0));
        assert!(c.report.all_ok());
    }

    #[test]
    fn exact_root_of_a_path() {
        // 3-uniform path of 3 edges: mu~ = 1 - 3a + a^2, no rational root;
        // 2 edges: 1 - 2a, root 1/2
        let t = parse(b"3 5\n0 1 2\n2 3 4").unwrap();
        let c = construct_alpha_normal_tree(&t, &uniform(&t, &rat(1, 2))).unwrap();
        assert!(c.report.all_ok());
        // non-uniform root of the star 1 - a0 - a1 - a2
        let s = Hypergraph::star(3, 3).unwrap();
        let c = construct_alpha_normal_tree(&s, &[rat(1, 2), rat(1, 3), rat(1, 6)]).unwrap();
        assert!(c.report.all_ok() && c.edges.len() == 3);
    }

    #[test]
    fn near_certificates_on_random_trees() {
        let tol = BigRational::new(1.into(), BigInt::from(10).pow(20));
        for seed in 0..4 {
            let t = random_ktree(3, 7, seed).unwrap();
            let y = lambda_enclosure(&t, &tol).unwrap().y;
            let a = reciprocal(&y.midpoint());
            let c = construct_alpha_normal_tree_near(&t, &uniform(&t, &a)).unwrap();
            let small = rat(1, 100_000_000);
            assert!(c.report.c1_max_dev <= small && c.report.c2_max_dev <= small);
            assert!(c.report.c3_ok);
        }
    }

    #[test]
    fn certificate_roundtrip() {
        let s = Hypergraph::star(4, 3).unwrap();
        let c = construct_alpha_normal_tree(&s, &uniform(&s, &rat(1, 3))).unwrap();
        let j = c.to_json();
        assert_eq!(j["alpha"]["0"], "1/3");
        assert_eq!(j["trace"][0]["c"], "2/3");
        let r = verify_certificate(&s, &j, &BigRational::zero()).unwrap();
        assert!(r.all_ok());

        let mut broken = j.clone();
        broken["B"][0]["w"] = Value::String("0.5".into());
        let r = verify_certificate(&s, &broken, &BigRational::zero()).unwrap();
        assert!(!r.c1_ok);
    }
}
