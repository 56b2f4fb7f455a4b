//! Seeded random generators. Identical arguments give identical graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

use super::{k_subsets, Hypergraph};
use crate::error::{Error, Result};

/// Grows a k-tree one edge at a time: each new edge joins k-1 fresh vertices
/// to a uniformly chosen existing vertex.
pub fn random_ktree(k: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if k < 2 || m == 0 {
        return Err(Error::BadArity(format!("random k-tree needs k >= 2 and m >= 1, got k={k}, m={m}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![(0..k).collect::<Vec<_>>()];
    let mut n = k;
    for _ in 1..m {
        let anchor = rng.gen_range(0..n);
        let mut e = vec![anchor];
        e.extend(n..n + k - 1);
        n += k - 1;
        edges.push(e);
    }
    Hypergraph::new(k, n, edges)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Connected k-graph on `n` vertices with `m` edges: a random spanning
/// skeleton that covers every vertex, topped up with distinct random edges.
pub fn random_connected_kgraph(k: usize, n: usize, m: usize, seed: u64) -> Result<Hypergraph> {
    if k < 2 || n < k {
        return Err(Error::BadArity(format!("need n >= k >= 2, got n={n}, k={k}")));
    }
    let min_edges = (n - 1).div_ceil(k - 1);
    let max_edges = binomial(n, k);
    if m < min_edges || m as u128 > max_edges {
        return Err(Error::BadArity(format!(
            "{m} edges infeasible for a connected {k}-graph on {n} vertices (need {min_edges}..={max_edges})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);

    let mut first = order[..k].to_vec();
    first.sort_unstable();
    let mut edges: Vec<Vec<usize>> = vec![first];
    let mut covered = k;
    while covered < n {
        let fresh = (k - 1).min(n - covered);
        let mut e: Vec<usize> = order[covered..covered + fresh].to_vec();
        // k - fresh distinct vertices from the covered part; at least one
        let old: Vec<usize> = order[..covered]
            .choose_multiple(&mut rng, k - fresh)
            .copied()
            .collect();
        e.extend(old);
        e.sort_unstable();
        covered += fresh;
        edges.push(e);
    }

    let mut present: HashSet<Vec<usize>> = edges.iter().cloned().collect();
    let extra = m - edges.len();
    if extra > 0 {
        if max_edges <= 200_000 {
            let mut pool: Vec<Vec<usize>> = k_subsets(n, k)
                .into_iter()
                .filter(|e| !present.contains(e))
                .collect();
            let (picked, _) = pool.partial_shuffle(&mut rng, extra);
            edges.extend(picked.iter().cloned());
        } else {
            while edges.len() < m {
                let mut e: Vec<usize> = (0..n).collect::<Vec<_>>().choose_multiple(&mut rng, k).copied().collect();
                e.sort_unstable();
                if present.insert(e.clone()) {
                    edges.push(e);
                }
            }
        }
    }
    Hypergraph::new(k, n, edges)
}
