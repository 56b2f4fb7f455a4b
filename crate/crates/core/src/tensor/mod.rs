//! Adjacency tensor of a k-graph: application, spectral radius by shifted
//! power iteration, eigen-residuals, and the alpha-normal machinery.
//!
//! Only the action `(A x^{k-1})_v = sum_{e ∋ v} prod_{w in e \ v} x_w` is ever
//! needed; the tensor itself is never materialized.

pub mod alpha;

use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::poly::SparsePoly;
use crate::zeros::{lambda_enclosure, LambdaEnclosure};

pub use alpha::{
    construct_alpha_normal_tree, construct_alpha_normal_tree_near, verify_alpha_normal, AlphaNormalConstruction,
    AlphaNormalReport, Outcome, ReductionStep, WeightedIncidence,
};

pub const DEFAULT_MAX_ITER: usize = 100_000;
pub const DEFAULT_RHO_TOL: f64 = 1e-10;

/// `A x^{k-1}` over any commutative ring.
pub fn apply_adjacency_generic<T>(h: &Hypergraph, x: &[T]) -> Result<Vec<T>>
where
    T: Clone + Zero + One + Add<Output = T> + for<'a> Mul<&'a T, Output = T>,
{
    if x.len() != h.n() {
        return Err(Error::BadArity(format!("vector of length {} for {} vertices", x.len(), h.n())));
    }
    Ok((0..h.n())
        .map(|v| {
            h.incident(v).iter().fold(T::zero(), |sum, &e| {
                let term = h.edges()[e]
                    .iter()
                    .filter(|&w| w != v)
                    .fold(T::one(), |acc, w| acc * &x[w]);
                sum + term
            })
        })
        .collect())
}

pub fn apply_adjacency(h: &Hypergraph, x: &[f64]) -> Result<Vec<f64>> {
    apply_adjacency_generic(h, x)
}

pub fn apply_adjacency_exact(h: &Hypergraph, x: &[BigRational]) -> Result<Vec<BigRational>> {
    apply_adjacency_generic(h, x)
}

/// `||A x^{k-1} - lambda x^{[k-1]}||_inf / max(1, ||x||_inf^{k-1})`.
pub fn eigen_residual(h: &Hypergraph, lambda: f64, x: &[f64]) -> Result<f64> {
    let ax = apply_adjacency(h, x)?;
    let p = (h.k() - 1) as i32;
    let norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let worst = ax
        .iter()
        .zip(x)
        .map(|(a, v)| (a - lambda * v.powi(p)).abs())
        .fold(0.0f64, f64::max);
    Ok(worst / norm.powi(p).max(1.0))
}

/// Collatz–Wielandt bracket and Perron vector from the shifted iteration.
#[derive(Debug, Clone)]
pub struct NqzResult {
    pub lower: f64,
    pub upper: f64,
    /// Positive, max-normalized.
    pub x: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

impl NqzResult {
    pub fn rho(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "lower": self.lower,
            "upper": self.upper,
            "rho": self.rho(),
            "iterations": self.iterations,
            "converged": self.converged,
            "x": self.x,
        })
    }
}

/// Runs the iteration `x <- (A x^{k-1} + x^{[k-1]})^{[1/(k-1)]}` from the
/// all-ones vector; the per-vertex ratios bracket `rho(A) + 1`. Always returns
/// the last bracket; `converged` tells whether it reached `tol`.
pub fn nqz_iterate(h: &Hypergraph, tol: f64, max_iter: usize) -> Result<NqzResult> {
    if h.num_edges() == 0 {
        return Err(Error::NoSpectrum);
    }
    if !h.is_connected() {
        return Err(Error::Precondition("power iteration needs a connected hypergraph".into()));
    }
    let p = (h.k() - 1) as i32;
    let inv = 1.0 / p as f64;
    let mut x = vec![1.0f64; h.n()];
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=max_iter {
        let ax = apply_adjacency(h, &x)?;
        let mut y = Vec::with_capacity(x.len());
        lower = f64::INFINITY;
        upper = 0.0f64;
        for (a, v) in ax.iter().zip(&x) {
            let base = v.powi(p);
            let shifted = a + base;
            let ratio = shifted / base;
            lower = lower.min(ratio);
            upper = upper.max(ratio);
            y.push(shifted.powf(inv));
        }
        lower -= 1.0;
        upper -= 1.0;
        if upper - lower <= tol {
            return Ok(NqzResult {
                lower,
                upper,
                x,
                iterations: it,
                converged: true,
            });
        }
        let top = y.iter().copied().fold(0.0, f64::max);
        x = y.into_iter().map(|v| v / top).collect();
    }
    Ok(NqzResult {
        lower,
        upper,
        x,
        iterations: max_iter,
        converged: false,
    })
}

/// Like [`nqz_iterate`], but failing with `Inconclusive` when the bracket
/// does not close within `max_iter` rounds.
pub fn spectral_radius_nqz(h: &Hypergraph, tol: f64, max_iter: usize) -> Result<NqzResult> {
    let r = nqz_iterate(h, tol, max_iter)?;
    if !r.converged {
        return Err(Error::Inconclusive(format!(
            "bracket [{}, {}] after {} iterations",
            r.lower, r.upper, r.iterations
        )));
    }
    Ok(r)
}

#[derive(Debug, Clone)]
pub struct RhoLambda {
    pub lambda: LambdaEnclosure,
    pub nqz: NqzResult,
    pub difference: f64,
}

/// Compares the exact largest zero of `mu(T)` with the power-iteration
/// spectral radius of a k-tree.
pub fn rho_lambda(t: &Hypergraph, tol: f64) -> Result<RhoLambda> {
    if !t.is_ktree() {
        return Err(Error::Precondition("input is not a k-tree".into()));
    }
    let lambda = lambda_enclosure(t, &crate::zeros::default_tol())?;
    let nqz = spectral_radius_nqz(t, tol.min(DEFAULT_RHO_TOL), DEFAULT_MAX_ITER)?;
    let difference = (lambda.lambda.mid_f64() - nqz.rho()).abs();
    Ok(RhoLambda { lambda, nqz, difference })
}

pub fn cross_check_rho_lambda(t: &Hypergraph, tol: f64) -> Result<bool> {
    Ok(rho_lambda(t, tol)?.difference <= tol)
}

/// Characteristic polynomial of the 0/1 adjacency matrix of a 2-graph, by
/// integer Faddeev–LeVerrier.
pub fn char_poly_tree_k2(t: &Hypergraph) -> Result<SparsePoly> {
    if t.k() != 2 {
        return Err(Error::BadArity(format!("adjacency matrix needs k = 2, got {}", t.k())));
    }
    let n = t.n();
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row = vec![BigInt::zero(); n];
            for w in t.neighbors(i) {
                row[w] = BigInt::from(t.codegree(i, w));
            }
            row
        })
        .collect();
    // c[j] is the coefficient of x^j
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for step in 1..=n {
        // M <- A M + c_{n-step+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for l in 0..n {
                    if !a[i][l].is_zero() && !m[l][j].is_zero() {
                        s += &a[i][l] * &m[l][j];
                    }
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - step + 1];
        }
        m = next;
        let mut trace = BigInt::zero();
        for i in 0..n {
            for l in 0..n {
                if !a[i][l].is_zero() {
                    trace += &a[i][l] * &m[l][i];
                }
            }
        }
        c[n - step] = -trace / BigInt::from(step);
    }
    Ok(SparsePoly::from_dense(&c))
}
