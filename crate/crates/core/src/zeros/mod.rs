//! Zeros of matching polynomials.
//!
//! Rigorous work happens in `y = x^k`: `mu(H, x) = x^t q(x^k)` with an integer
//! polynomial `q` whose real zeros are all positive. The largest one, `y*`, is
//! isolated with a Sturm sequence and dyadic bisection, and `lambda(H)` is
//! enclosed as `y*^(1/k)` by rational k-th root bisection. Floating roots are
//! computed separately and only feed the rotation check and the CSV export.

mod aberth;
pub mod dense;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::matchpoly::{match_counts_with, Limits};
use crate::poly::{pow_rational, to_f64, SparsePoly};

pub use dense::{IntPoly, Sturm};

/// Bisection rounds allowed for one enclosure.
pub const MAX_ROUNDS: usize = 200;

/// `2^-40`.
pub fn default_tol() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << 40)
}

/// Closed rational interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn mid_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Whether the exact binary value of `x` lies in the interval.
    pub fn contains_f64(&self, x: f64) -> bool {
        BigRational::from_float(x).is_some_and(|r| self.contains(&r))
    }

    /// `{"lo":"p/q","hi":"p/q","mid":"<15 significant digits>"}`
    pub fn to_json(&self) -> Value {
        json!({
            "lo": self.lo.to_string(),
            "hi": self.hi.to_string(),
            "mid": format!("{:.14e}", self.mid_f64()),
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// `mu(x) = x^t q(x^k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduced {
    pub k: usize,
    pub t: usize,
    pub q: SparsePoly,
}

impl Reduced {
    pub fn of(h: &Hypergraph) -> Result<Self> {
        Self::of_with(h, &Limits::default())
    }

    pub fn of_with(h: &Hypergraph, limits: &Limits) -> Result<Self> {
        let counts = match_counts_with(h, limits)?;
        let m = counts.matching_number();
        let q = SparsePoly::from_terms(counts.p.iter().enumerate().map(|(r, p)| {
            let c = if r % 2 == 1 { -p.clone() } else { p.clone() };
            (m - r, c)
        }));
        Ok(Reduced {
            k: h.k(),
            t: h.n() - h.k() * m,
            q,
        })
    }

    /// Splits any polynomial whose exponents are congruent mod `k`.
    pub fn from_mu(mu: &SparsePoly, k: usize) -> Result<Self> {
        let t = mu
            .low_degree()
            .ok_or_else(|| Error::Precondition("zero polynomial".into()))?;
        if k == 0 {
            return Err(Error::BadArity("k must be positive".into()));
        }
        let mut terms = Vec::with_capacity(mu.num_terms());
        for (e, c) in mu.terms() {
            if (e - t) % k != 0 {
                return Err(Error::Precondition(format!("x^{e} is not x^{t} times a power of x^{k}")));
            }
            terms.push(((e - t) / k, c.clone()));
        }
        Ok(Reduced {
            k,
            t,
            q: SparsePoly::from_terms(terms),
        })
    }

    /// `x^t q(x^k)`.
    pub fn mu(&self) -> SparsePoly {
        SparsePoly::from_terms(self.q.terms().map(|(e, c)| (self.t + self.k * e, c.clone())))
    }

    fn dense_q(&self) -> Result<IntPoly> {
        let q = IntPoly::from_sparse(&self.q);
        if q.degree().unwrap_or(0) == 0 {
            return Err(Error::NoSpectrum);
        }
        Ok(q)
    }
}

/// `(t, q)` with `mu(H, x) = x^t q(x^k)`.
pub fn reduced_poly(h: &Hypergraph) -> Result<(usize, SparsePoly)> {
    let r = Reduced::of(h)?;
    Ok((r.t, r.q))
}

/// Largest real zero of `q`, as an interval `(lo, hi]` of width at most
/// `ytol` holding no other zero of `q`, or a point when it is hit exactly.
pub fn largest_real_root(q: &IntPoly, ytol: &BigRational) -> Result<Interval> {
    let sturm = Sturm::new(q);
    let base = sturm.base();
    let Some(deg) = base.degree().filter(|&d| d > 0) else {
        return Err(Error::NoSpectrum);
    };
    let lc = to_f64(&base.coefs()[deg]).abs();
    let cauchy = base.coefs()[..deg].iter().map(|c| to_f64(c).abs() / lc).fold(0.0, f64::max) + 1.0;
    let mut hi = BigRational::one();
    while hi.to_f64().unwrap_or(f64::INFINITY) <= cauchy {
        hi *= BigInt::from(2);
    }
    let mut lo = -hi.clone();
    let mut above_lo = sturm.count_above(&lo);
    if above_lo == 0 {
        return Err(Error::Inconclusive("polynomial has no real zero".into()));
    }
    let two = BigInt::from(2);
    for _ in 0..MAX_ROUNDS {
        if above_lo == 1 && &hi - &lo <= *ytol {
            return Ok(Interval::new(lo, hi));
        }
        let mid = (&lo + &hi) / &two;
        let above = sturm.count_above(&mid);
        if above == 0 {
            if base.sign_at(&mid) == Ordering::Equal {
                return Ok(Interval::point(mid));
            }
            hi = mid;
        } else {
            lo = mid;
            above_lo = above;
        }
    }
    Err(Error::Inconclusive(format!("largest zero not isolated within {MAX_ROUNDS} rounds")))
}

/// Rational `a <= y^(1/k) <= b` with `b - a <= tol`, or `a = b` when the root
/// is rational.
pub fn kth_root_bracket(y: &BigRational, k: usize, tol: &BigRational) -> (BigRational, BigRational) {
    assert!(!y.is_negative(), "k-th root of a negative number");
    let kk = k as u32;
    let (n, d) = (y.numer(), y.denom());
    let (rn, rd) = (n.nth_root(kk), d.nth_root(kk));
    if num_traits::pow(rn.clone(), k) == *n && num_traits::pow(rd.clone(), k) == *d {
        let r = BigRational::new(rn, rd);
        return (r.clone(), r);
    }
    let one = BigRational::one();
    let (mut a, mut b) = if *y >= one {
        (one, y.clone())
    } else {
        (BigRational::zero(), one)
    };
    let two = BigInt::from(2);
    while &b - &a > *tol {
        let mid = (&a + &b) / &two;
        if pow_rational(&mid, k) <= *y {
            a = mid;
        } else {
            b = mid;
        }
    }
    (a, b)
}

/// `y*` and `lambda = y*^(1/k)` enclosures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaEnclosure {
    pub k: usize,
    pub y: Interval,
    pub lambda: Interval,
}

impl LambdaEnclosure {
    pub fn to_json(&self) -> Value {
        json!({"k": self.k, "y": self.y.to_json(), "lambda": self.lambda.to_json()})
    }
}

pub fn lambda_enclosure(h: &Hypergraph, tol: &BigRational) -> Result<LambdaEnclosure> {
    lambda_enclosure_reduced(&Reduced::of(h)?, tol)
}

pub fn lambda_enclosure_reduced(r: &Reduced, tol: &BigRational) -> Result<LambdaEnclosure> {
    if !tol.is_positive() {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let q = r.dense_q()?;
    let quarter = tol / BigInt::from(4);
    let mut ytol = tol / BigInt::from(2);
    for _ in 0..8 {
        let y = largest_real_root(&q, &ytol)?;
        let (a, b) = if y.is_point() {
            kth_root_bracket(&y.lo, r.k, tol)
        } else {
            (kth_root_bracket(&y.lo, r.k, &quarter).0, kth_root_bracket(&y.hi, r.k, &quarter).1)
        };
        let lambda = Interval::new(a, b);
        if lambda.width() <= *tol {
            return Ok(LambdaEnclosure { k: r.k, y, lambda });
        }
        ytol /= BigInt::from(16);
    }
    Err(Error::Inconclusive("lambda enclosure did not reach the tolerance".into()))
}

/// Largest exponent step `l` with `f = x^t g(x^l)`; 0 for monomials.
pub fn cyclic_index(f: &SparsePoly) -> usize {
    let Some(t) = f.low_degree() else {
        return 0;
    };
    f.terms().fold(0, |g, (e, _)| num_integer::gcd(g, e - t))
}

/// Whether `y*` is a simple zero of `q`, decided exactly.
pub fn simplicity_check(h: &Hypergraph) -> Result<bool> {
    simplicity_check_reduced(&Reduced::of(h)?)
}

pub fn simplicity_check_reduced(r: &Reduced) -> Result<bool> {
    let q = r.dense_q()?;
    let g = q.gcd(&q.derivative());
    if g.degree() == Some(0) {
        return Ok(true);
    }
    // zeros of g are zeros of q, and y* is the only zero of q above y.lo
    let y = largest_real_root(&q, &default_tol())?;
    if y.is_point() {
        return Ok(g.sign_at(&y.lo) != Ordering::Equal);
    }
    Ok(Sturm::new(&g).count_above(&y.lo) == 0)
}

/// `(k/(k-1))^k (k-1)(delta-1)`, the upper bound on `y*`; `None` when
/// `delta < 2`.
pub fn upper_bound_y(k: usize, delta: usize) -> Option<BigRational> {
    if delta < 2 || k < 2 {
        return None;
    }
    let ratio = BigRational::new(BigInt::from(k), BigInt::from(k - 1));
    Some(pow_rational(&ratio, k) * BigRational::from_integer(BigInt::from((k - 1) * (delta - 1))))
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub k: usize,
    pub delta: usize,
    /// `delta <= y*`.
    pub lower_ok: bool,
    /// `delta == y*`.
    pub lower_equal: bool,
    /// All edges share a vertex.
    pub lower_tight: bool,
    pub upper: Option<BigRational>,
    /// `y* < upper`; `None` when `delta < 2`.
    pub upper_ok: Option<bool>,
    pub enclosure: LambdaEnclosure,
}

impl BoundsReport {
    pub fn to_json(&self) -> Value {
        json!({
            "k": self.k,
            "delta": self.delta,
            "lower_ok": self.lower_ok,
            "lower_equal": self.lower_equal,
            "lower_tight": self.lower_tight,
            "upper_y": self.upper.as_ref().map(ToString::to_string),
            "upper_ok": self.upper_ok,
            "enclosure": self.enclosure.to_json(),
        })
    }
}

pub fn bounds_report(h: &Hypergraph, tol: &BigRational) -> Result<BoundsReport> {
    let r = Reduced::of(h)?;
    let enclosure = lambda_enclosure_reduced(&r, tol)?;
    let sturm = Sturm::new(&r.dense_q()?);
    let delta = h.max_degree();
    let d = BigRational::from_integer(BigInt::from(delta));
    let at_delta = sturm.base().sign_at(&d) == Ordering::Equal;
    let above_delta = sturm.count_above(&d);
    let upper = upper_bound_y(h.k(), delta);
    let upper_ok = upper
        .as_ref()
        .map(|u| sturm.base().sign_at(u) != Ordering::Equal && sturm.count_above(u) == 0);
    Ok(BoundsReport {
        k: h.k(),
        delta,
        lower_ok: at_delta || above_delta > 0,
        lower_equal: at_delta && above_delta == 0,
        lower_tight: h.edges_share_common_vertex(),
        upper,
        upper_ok,
        enclosure,
    })
}

/// Floating roots of `mu`, sorted by modulus and then by argument in
/// `[0, 2 pi)`.
#[derive(Debug, Clone)]
pub struct RootReport {
    pub roots: Vec<Complex64>,
    pub precision: f64,
    pub k: usize,
}

pub const DEFAULT_PRECISION: f64 = 1e-12;

pub fn all_roots(h: &Hypergraph, precision: f64) -> Result<RootReport> {
    all_roots_reduced(&Reduced::of(h)?, precision)
}

pub fn all_roots_reduced(r: &Reduced, precision: f64) -> Result<RootReport> {
    let q = r.dense_q()?;
    let mut roots = vec![Complex64::new(0.0, 0.0); r.t];
    let turn = |j: usize| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / r.k as f64);
    for (factor, mult) in q.squarefree_decomposition() {
        let coefs: Vec<f64> = factor.coefs().iter().map(to_f64).collect();
        let ys = aberth::roots(&coefs, precision)
            .ok_or_else(|| Error::Inconclusive("root iteration did not converge".into()))?;
        for y in ys {
            let base = y.powf(1.0 / r.k as f64);
            for _ in 0..mult {
                roots.extend((0..r.k).map(|j| base * turn(j)));
            }
        }
    }
    let arg = |z: &Complex64| {
        let a = z.arg();
        if a < 0.0 {
            a + std::f64::consts::TAU
        } else {
            a
        }
    };
    roots.sort_by(|a, b| a.norm().total_cmp(&b.norm()).then(arg(a).total_cmp(&arg(b))));
    Ok(RootReport {
        roots,
        precision,
        k: r.k,
    })
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * a.norm().max(1.0)
}

/// Whether multiplying every root by `e^(2 pi i / k)` permutes the multiset,
/// matching greedily (nearest unused root) within `10 * precision`.
pub fn rotation_check(r: &RootReport) -> bool {
    rotation_check_within(r, 10.0 * r.precision)
}

/// [`rotation_check`] with an explicit relative matching tolerance.
pub fn rotation_check_within(r: &RootReport, tol: f64) -> bool {
    if r.k == 0 {
        return false;
    }
    let turn = Complex64::from_polar(1.0, std::f64::consts::TAU / r.k as f64);
    let mut used = vec![false; r.roots.len()];
    for &z in &r.roots {
        let target = z * turn;
        let best = r
            .roots
            .iter()
            .enumerate()
            .filter(|&(j, _)| !used[j])
            .min_by(|a, b| (a.1 - target).norm().total_cmp(&(b.1 - target).norm()));
        match best {
            Some((j, &w)) if close(target, w, tol) => used[j] = true,
            _ => return false,
        }
    }
    true
}

/// Number of roots whose modulus is within `tol` (relative) of the largest.
pub fn max_modulus_count(r: &RootReport, tol: f64) -> usize {
    let top = r.roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    r.roots.iter().filter(|z| top - z.norm() <= tol * top.max(1.0)).count()
}

fn sig17(x: f64) -> String {
    // adding 0.0 turns -0.0 into 0.0
    format!("{:.16e}", x + 0.0)
}

/// `re,im` header, one root per line, 17 significant digits.
pub fn roots_csv(r: &RootReport) -> String {
    let mut out = String::from("re,im\n");
    for z in &r.roots {
        out.push_str(&sig17(z.re));
        out.push(',');
        out.push_str(&sig17(z.im));
        out.push('\n');
    }
    out
}

/// How a proper subgraph is cut out of its host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Deletion {
    Vertices(Vec<VertexId>),
    Edges(Vec<usize>),
}

impl Deletion {
    pub fn apply(&self, h: &Hypergraph) -> Result<Hypergraph> {
        match self {
            Deletion::Vertices(vs) if !vs.is_empty() => Ok(h.delete_vertices(vs)?.0),
            Deletion::Edges(es) if !es.is_empty() => {
                let mut es = es.clone();
                es.sort_unstable();
                es.dedup();
                let mut g = h.clone();
                for &e in es.iter().rev() {
                    g = g.without_edge(e)?;
                }
                Ok(g)
            }
            _ => Err(Error::Precondition("deletion leaves the hypergraph unchanged".into())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    /// `None` when the subgraph has no edges (`lambda = 0`).
    pub sub: Option<LambdaEnclosure>,
    pub full: LambdaEnclosure,
    pub separated: bool,
}

/// `lambda(G) < lambda(H)` for `G = deletion(H)`, with separated enclosures.
pub fn strict_monotonicity_check(h: &Hypergraph, deletion: &Deletion) -> Result<bool> {
    Ok(strict_monotonicity_report(h, deletion)?.separated)
}

pub fn strict_monotonicity_report(h: &Hypergraph, deletion: &Deletion) -> Result<MonotonicityReport> {
    if !h.is_connected() {
        return Err(Error::Precondition("host must be connected".into()));
    }
    let g = deletion.apply(h)?;
    let rh = Reduced::of(h)?;
    let rg = Reduced::of(&g)?;
    let mut tol = default_tol();
    for _ in 0..4 {
        let full = lambda_enclosure_reduced(&rh, &tol)?;
        if g.num_edges() == 0 {
            return Ok(MonotonicityReport {
                sub: None,
                separated: full.lambda.lo.is_positive(),
                full,
            });
        }
        let sub = lambda_enclosure_reduced(&rg, &tol)?;
        let separated = sub.lambda.hi < full.lambda.lo;
        let settled = separated || full.lambda.hi < sub.lambda.lo || (sub.y.is_point() && sub.y == full.y);
        if settled {
            return Ok(MonotonicityReport {
                sub: Some(sub),
                full,
                separated,
            });
        }
        tol = &tol * &tol;
    }
    Err(Error::Inconclusive("enclosures could not be separated".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse;

    fn k43() -> Hypergraph {
        parse(b"3 4\n0 1 3\n0 2 3\n1 2 3\n0 1 2").unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn reduced_examples() {
        assert_eq!(reduced_poly(&k43()).unwrap(), (1, SparsePoly::from_terms([(1usize, 1i64), (0, -4)])));
        let edge = Hypergraph::complete(4, 4).unwrap();
        assert_eq!(reduced_poly(&edge).unwrap(), (0, SparsePoly::from_terms([(1usize, 1i64), (0, -1)])));
        let star = Hypergraph::star(3, 5).unwrap();
        let (t, q) = reduced_poly(&star).unwrap();
        assert_eq!((t, q), (5 * 3 - 5 - 3 + 1, SparsePoly::from_terms([(1usize, 1i64), (0, -5)])));

        let r = Reduced::of(&k43()).unwrap();
        assert_eq!(r.mu(), SparsePoly::from_terms([(4usize, 1i64), (1, -4)]));
        assert_eq!(Reduced::from_mu(&r.mu(), 3).unwrap(), r);
        assert!(Reduced::from_mu(&r.mu(), 2).is_err());
    }

    #[test]
    fn k43_enclosure() {
        let tol = rat(1, 10_000_000_000);
        let e = lambda_enclosure(&k43(), &tol).unwrap();
        assert_eq!(e.y, Interval::point(rat(4, 1)));
        assert!(e.lambda.width() <= tol);
        // 1.5874010519682^3 straddles 4
        assert!(e.lambda.contains(&rat(15_874_010_519_682, 10_000_000_000_000)) || {
            let lo = pow_rational(&e.lambda.lo, 3);
            let hi = pow_rational(&e.lambda.hi, 3);
            lo <= rat(4, 1) && rat(4, 1) <= hi
        });
        assert!(pow_rational(&e.lambda.lo, 3) <= rat(4, 1));
        assert!(pow_rational(&e.lambda.hi, 3) >= rat(4, 1));
    }

    #[test]
    fn exact_enclosures() {
        let edge = Hypergraph::complete(3, 3).unwrap();
        let e = lambda_enclosure(&edge, &default_tol()).unwrap();
        assert_eq!(e.lambda, Interval::point(BigRational::one()));
        // two edges sharing a vertex: q = y - 2
        let h = Hypergraph::star(3, 2).unwrap();
        let e = lambda_enclosure(&h, &default_tol()).unwrap();
        assert_eq!(e.y, Interval::point(rat(2, 1)));
        assert!(e.lambda.contains_f64(2f64.cbrt()) || e.lambda.width() <= default_tol());
        assert!(matches!(lambda_enclosure(&Hypergraph::edgeless(3, 4).unwrap(), &default_tol()), Err(Error::NoSpectrum)));
    }

    #[test]
    fn irrational_largest_root() {
        // path with 3 edges, k = 2: mu = x^4 - 3x^2 + 1, y* = (3 + sqrt 5)/2
        let h = Hypergraph::new(2, 4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let tol = default_tol();
        let e = lambda_enclosure(&h, &tol).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(e.lambda.width() <= tol);
        assert!((e.lambda.mid_f64() - golden).abs() < 1e-11);
        assert!(!e.y.is_point() && e.y.width() <= tol);
    }

    #[test]
    fn kth_roots() {
        let tol = rat(1, 1 << 30);
        assert_eq!(kth_root_bracket(&rat(27, 8), 3, &tol), (rat(3, 2), rat(3, 2)));
        let (a, b) = kth_root_bracket(&rat(2, 1), 2, &tol);
        assert!(&b - &a <= tol && pow_rational(&a, 2) <= rat(2, 1) && pow_rational(&b, 2) >= rat(2, 1));
        let (a, b) = kth_root_bracket(&rat(1, 3), 2, &tol);
        assert!(pow_rational(&a, 2) <= rat(1, 3) && pow_rational(&b, 2) >= rat(1, 3));
    }

    #[test]
    fn cyclic_index_examples() {
        assert_eq!(cyclic_index(&SparsePoly::from_terms([(4usize, 1i64), (1, -4)])), 3);
        assert_eq!(cyclic_index(&SparsePoly::from_terms([(5usize, 1i64), (0, -1)])), 5);
        assert_eq!(cyclic_index(&SparsePoly::x_pow(7)), 0);
        assert_eq!(cyclic_index(&SparsePoly::zero()), 0);
        assert_eq!(cyclic_index(&SparsePoly::from_terms([(7usize, 1i64), (3, 1), (1, 1)])), 2);
    }

    #[test]
    fn simplicity() {
        assert!(simplicity_check(&k43()).unwrap());
        assert!(simplicity_check(&Hypergraph::complete(3, 3).unwrap()).unwrap());
        // q = (y-1)^2 has a double largest zero
        let r = Reduced::from_mu(&SparsePoly::from_terms([(4usize, 1i64), (2, -2), (0, 1)]), 2).unwrap();
        assert!(!simplicity_check_reduced(&r).unwrap());
        // q = (y-1)^2 (y-4): repeated zeros below a simple y*
        let r = Reduced::from_mu(&SparsePoly::from_terms([(3usize, 1i64), (2, -6), (1, 9), (0, -4)]), 1).unwrap();
        assert!(simplicity_check_reduced(&r).unwrap());
    }

    #[test]
    fn bounds_examples() {
        let b = bounds_report(&k43(), &default_tol()).unwrap();
        assert_eq!(b.upper, Some(rat(27, 2)));
        assert!(b.lower_ok && b.upper_ok == Some(true) && !b.lower_tight && !b.lower_equal);

        let b = bounds_report(&Hypergraph::star(3, 3).unwrap(), &default_tol()).unwrap();
        assert!(b.lower_ok && b.lower_tight && b.lower_equal && b.upper_ok == Some(true));

        let b = bounds_report(&Hypergraph::complete(3, 3).unwrap(), &default_tol()).unwrap();
        assert_eq!((b.delta, b.upper_ok), (1, None));
        assert!(b.lower_ok && b.lower_tight && b.lower_equal);
    }

    #[test]
    fn roots_of_k43() {
        let r = all_roots(&k43(), DEFAULT_PRECISION).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert_eq!(r.roots[0], Complex64::new(0.0, 0.0));
        let c = 4f64.cbrt();
        for (j, z) in r.roots[1..].iter().enumerate() {
            let want = Complex64::from_polar(c, std::f64::consts::TAU * j as f64 / 3.0);
            assert!((z - want).norm() < 1e-12, "{z} vs {want}");
        }
        assert!(rotation_check(&r));
        assert_eq!(max_modulus_count(&r, 1e-9), 3);
    }

    #[test]
    fn roots_of_single_edge_and_paths() {
        let r = all_roots(&Hypergraph::complete(4, 4).unwrap(), DEFAULT_PRECISION).unwrap();
        for z in &r.roots {
            assert!((z.norm() - 1.0).abs() < 1e-12 && (z.powu(4) - 1.0).norm() < 1e-11);
        }
        // k = 2 path on 5 vertices: eigenvalues 2cos(j pi/6)
        let p5 = Hypergraph::new(2, 5, (0..4).map(|i| vec![i, i + 1]).collect()).unwrap();
        let r = all_roots(&p5, DEFAULT_PRECISION).unwrap();
        let mut want: Vec<f64> = (1..=5).map(|j| 2.0 * (j as f64 * std::f64::consts::PI / 6.0).cos()).collect();
        want.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
        for (z, w) in r.roots.iter().zip(&want) {
            assert!(z.im.abs() < 1e-12 && (z.norm() - w.abs()).abs() < 1e-12);
        }
        assert!(rotation_check(&r));
    }

    #[test]
    fn rotation_negative_control() {
        let mut r = all_roots(&k43(), DEFAULT_PRECISION).unwrap();
        r.roots[2] += Complex64::new(1e3 * r.precision, 0.0);
        assert!(!rotation_check(&r));
        let pm = RootReport {
            roots: vec![Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0)],
            precision: 1e-12,
            k: 2,
        };
        assert!(rotation_check(&pm));
    }

    #[test]
    fn csv_format() {
        let r = all_roots(&Hypergraph::complete(2, 2).unwrap(), DEFAULT_PRECISION).unwrap();
        let csv = roots_csv(&r);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "re,im");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1], "1.0000000000000000e0,0.0000000000000000e0");
    }

    #[test]
    fn monotonicity_examples() {
        assert!(strict_monotonicity_check(&k43(), &Deletion::Vertices(vec![0])).unwrap());
        let two = Hypergraph::star(3, 2).unwrap();
        assert!(strict_monotonicity_check(&two, &Deletion::Edges(vec![1])).unwrap());
        assert!(strict_monotonicity_check(&Hypergraph::complete(3, 3).unwrap(), &Deletion::Edges(vec![0])).unwrap());
        assert!(matches!(
            strict_monotonicity_check(&k43(), &Deletion::Vertices(vec![])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn json_shapes() {
        let e = lambda_enclosure(&k43(), &default_tol()).unwrap();
        let v = e.to_json();
        assert_eq!(v["y"]["lo"], "4");
        assert_eq!(v["k"], 3);
        let mid: f64 = v["lambda"]["mid"].as_str().unwrap().parse().unwrap();
        assert!((mid - 4f64.cbrt()).abs() < 1e-12);
    }
}
