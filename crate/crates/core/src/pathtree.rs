//! Path trees.
//!
//! The path tree `T(H, u)` has one vertex per nonbacktracking path of `H`
//! starting at `u`. A path `p` together with its k-1 continuations through a
//! single edge `f` at the terminal vertex of `p` forms one tree edge. Tree
//! vertex ids follow breadth-first discovery with the root at 0; continuing
//! edges are taken in increasing edge index and continuation vertices in
//! increasing vertex id.
//!
//! [`PathTreeKind::DeletionOrdered`] builds the subtree in which sibling
//! continuations also block one another; see its docs for when the Godsil
//! identity needs it.

use std::collections::VecDeque;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, VertexId};
use crate::matchpoly::{matching_polynomial_with, Limits};
use crate::poly::SparsePoly;

pub const DEFAULT_MAX_TREE_VERTICES: usize = 50_000;

/// Alternating vertex/edge path `v_0 e_1 v_1 ... e_l v_l` in a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NbPath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<usize>,
}

impl NbPath {
    pub fn single(u: VertexId) -> Self {
        NbPath {
            vertices: vec![u],
            edges: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Terminal vertex.
    pub fn terminal_vertex(&self) -> VertexId {
        *self.vertices.last().expect("a path has at least one vertex")
    }

    /// Terminal edge, `None` for the length-0 path.
    pub fn terminal_edge(&self) -> Option<usize> {
        self.edges.last().copied()
    }

    fn extended(&self, f: usize, w: VertexId) -> Self {
        let mut out = self.clone();
        out.edges.push(f);
        out.vertices.push(w);
        out
    }
}

/// Whether `p` is nonbacktracking in `h`: for `j >= 2`, edge `e_j` avoids
/// `v_0, ..., v_{j-2}`. Errors if `p` is not a path of `h` at all.
pub fn is_nonbacktracking(h: &Hypergraph, p: &NbPath) -> Result<bool> {
    if p.vertices.len() != p.edges.len() + 1 {
        return Err(Error::BadPath(format!(
            "{} vertices for {} edges",
            p.vertices.len(),
            p.edges.len()
        )));
    }
    for &v in &p.vertices {
        if v >= h.n() {
            return Err(Error::BadPath(format!("vertex {v} not in the host")));
        }
    }
    let mut edges = Vec::with_capacity(p.edges.len());
    for &e in &p.edges {
        edges.push(h.edge(e).map_err(|_| Error::BadPath(format!("edge {e} not in the host")))?);
    }
    let mut vs = p.vertices.clone();
    vs.sort_unstable();
    if vs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadPath("repeated vertex".into()));
    }
    let mut es = p.edges.clone();
    es.sort_unstable();
    if es.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::BadPath("repeated edge".into()));
    }
    for (i, e) in edges.iter().enumerate() {
        if !e.contains(p.vertices[i]) || !e.contains(p.vertices[i + 1]) {
            return Err(Error::BadPath(format!(
                "edge {} does not join {} and {}",
                p.edges[i],
                p.vertices[i],
                p.vertices[i + 1]
            )));
        }
    }
    // edge index j (1-based) is edges[j-1]; it must avoid v_0..v_{j-2}
    Ok(edges
        .iter()
        .enumerate()
        .all(|(i, e)| p.vertices[..i].iter().all(|&v| !e.contains(v))))
}

#[derive(Debug, Clone)]
pub struct PathTree {
    pub tree: Hypergraph,
    /// `labels[t]` is the host path represented by tree vertex `t`.
    pub labels: Vec<NbPath>,
}

impl PathTree {
    pub const ROOT: VertexId = 0;

    pub fn root_label(&self) -> &NbPath {
        &self.labels[Self::ROOT]
    }

    /// Depth = length of the longest labelled path.
    pub fn depth(&self) -> usize {
        self.labels.iter().map(NbPath::len).max().unwrap_or(0)
    }

    /// True when mapping each tree vertex to its terminal host vertex is an
    /// isomorphism onto the root's component of `host`. Holds exactly when
    /// that component is a k-tree.
    pub fn terminal_map_is_isomorphism(&self, host: &Hypergraph) -> bool {
        let root = self.root_label().terminal_vertex();
        let Ok((comp, map)) = host.component_of(root) else {
            return false;
        };
        if comp.n() != self.tree.n() || comp.num_edges() != self.tree.num_edges() {
            return false;
        }
        let mut hit = vec![false; comp.n()];
        for l in &self.labels {
            let Some(v) = map.old_to_new[l.terminal_vertex()] else {
                return false;
            };
            if std::mem::replace(&mut hit[v], true) {
                return false;
            }
        }
        let mut used = vec![false; comp.num_edges()];
        for e in self.tree.edges() {
            let image: Vec<_> = e
                .iter()
                .map(|t| map.old_to_new[self.labels[t].terminal_vertex()].unwrap())
                .collect();
            match comp.find_edge(&image) {
                Some(i) if !used[i] => used[i] = true,
                _ => return false,
            }
        }
        true
    }

    /// `{"root":0,"labels":{"<id>":{"v":[...],"e":[...]}}}`
    pub fn labels_json(&self) -> Value {
        let labels: Map<String, Value> = self
            .labels
            .iter()
            .enumerate()
            .map(|(t, p)| (t.to_string(), json!({"v": p.vertices, "e": p.edges})))
            .collect();
        json!({"root": Self::ROOT, "labels": labels})
    }
}

/// Which continuations a tree vertex receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathTreeKind {
    /// Every nonbacktracking path from the root is a tree vertex.
    #[default]
    Nonbacktracking,
    /// Like `Nonbacktracking`, but the i-th continuation through an edge
    /// (vertices in increasing id) also avoids the earlier continuations of
    /// that edge, so the subtree at `(p, f, w_i)` is the tree of `w_i` in the
    /// host with the path and `w_1, ..., w_{i-1}` deleted. Always a subtree
    /// of the nonbacktracking tree; the two agree when k = 2 and on k-trees.
    DeletionOrdered,
}

/// Builds `T(h, u)` breadth-first, failing once more than `max_vertices`
/// tree vertices would be needed.
pub fn build_path_tree(h: &Hypergraph, u: VertexId, max_vertices: usize) -> Result<PathTree> {
    build_path_tree_of_kind(h, u, max_vertices, PathTreeKind::Nonbacktracking)
}

pub fn build_path_tree_of_kind(
    h: &Hypergraph,
    u: VertexId,
    max_vertices: usize,
    kind: PathTreeKind,
) -> Result<PathTree> {
    if u >= h.n() {
        return Err(Error::IdOutOfRange { id: u, limit: h.n() });
    }
    let too_big = || Error::LimitExceeded(format!("path tree exceeds {max_vertices} vertices"));
    if max_vertices == 0 {
        return Err(too_big());
    }
    let k = h.k();
    let words = h.n().div_ceil(64).max(1);
    let mark = |set: &mut Vec<u64>, v: usize| set[v / 64] |= 1u64 << (v % 64);
    let has = |set: &[u64], v: usize| set[v / 64] >> (v % 64) & 1 == 1;

    let mut labels = vec![NbPath::single(u)];
    // host vertices a continuing edge must avoid, per tree vertex
    let mut blocked: Vec<Vec<u64>> = vec![vec![0; words]];
    let mut tree_edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        let v = labels[t].terminal_vertex();
        let mut grown = Vec::new();
        for &f in h.incident(v) {
            let edge = &h.edges()[f];
            if edge.iter().any(|w| has(&blocked[t], w)) {
                continue;
            }
            if labels.len() + grown.len() + k - 1 > max_vertices {
                return Err(too_big());
            }
            let mut child_block = blocked[t].clone();
            mark(&mut child_block, v);
            let mut tree_edge = vec![t];
            for w in edge.iter().filter(|&w| w != v) {
                tree_edge.push(labels.len() + grown.len());
                grown.push((labels[t].extended(f, w), child_block.clone()));
                if kind == PathTreeKind::DeletionOrdered {
                    mark(&mut child_block, w);
                }
            }
            tree_edges.push(Edge::from_sorted(tree_edge));
        }
        for (p, b) in grown {
            queue.push_back(labels.len());
            labels.push(p);
            blocked.push(b);
        }
    }
    let tree = Hypergraph::from_checked(k, labels.len(), tree_edges);
    Ok(PathTree { tree, labels })
}

/// Caps for the identity checks below.
#[derive(Debug, Clone, Copy)]
pub struct TreeLimits {
    pub kind: PathTreeKind,
    pub max_tree_vertices: usize,
    pub matching: Limits,
}

impl Default for TreeLimits {
    fn default() -> Self {
        TreeLimits {
            kind: PathTreeKind::default(),
            max_tree_vertices: DEFAULT_MAX_TREE_VERTICES,
            matching: Limits::default(),
        }
    }
}

/// `mu(T) ` and `mu(T - root)`.
fn tree_polys(pt: &PathTree, limits: &TreeLimits) -> Result<(SparsePoly, SparsePoly)> {
    let full = matching_polynomial_with(&pt.tree, &limits.matching)?;
    let (rest, _) = pt.tree.delete_vertices(&[PathTree::ROOT])?;
    let minus_root = matching_polynomial_with(&rest, &limits.matching)?;
    Ok((full, minus_root))
}

/// `mu(H - u) mu(T) = mu(T - u) mu(H)` with `T = T(H, u)`.
pub fn verify_godsil(h: &Hypergraph, u: VertexId) -> Result<bool> {
    verify_godsil_with(h, u, &TreeLimits::default())
}

pub fn verify_godsil_with(h: &Hypergraph, u: VertexId, limits: &TreeLimits) -> Result<bool> {
    let pt = build_path_tree_of_kind(h, u, limits.max_tree_vertices, limits.kind)?;
    let mu_h = matching_polynomial_with(h, &limits.matching)?;
    let (h_minus_u, _) = h.delete_vertices(&[u])?;
    let mu_h_u = matching_polynomial_with(&h_minus_u, &limits.matching)?;
    let (mu_t, mu_t_u) = tree_polys(&pt, limits)?;
    Ok(&mu_h_u * &mu_t == &mu_t_u * &mu_h)
}

/// `mu(T(H, u)) / mu(H)`, exact. `H` must be connected.
pub fn divisibility_quotient(h: &Hypergraph, u: VertexId) -> Result<SparsePoly> {
    divisibility_quotient_with(h, u, &TreeLimits::default())
}

pub fn divisibility_quotient_with(h: &Hypergraph, u: VertexId, limits: &TreeLimits) -> Result<SparsePoly> {
    if !h.is_connected() {
        return Err(Error::Precondition("divisibility needs a connected hypergraph".into()));
    }
    let pt = build_path_tree_of_kind(h, u, limits.max_tree_vertices, limits.kind)?;
    let mu_t = matching_polynomial_with(&pt.tree, &limits.matching)?;
    let mu_h = matching_polynomial_with(h, &limits.matching)?;
    mu_t.div_exact(&mu_h)
}

/// Whether `f` looks like the matching polynomial of some k-graph: monic,
/// supported on `deg - k r` for `r = 0..=m` with every such coefficient
/// nonzero and of sign `(-1)^r`.
pub fn has_matching_sign_pattern(f: &SparsePoly, k: usize) -> bool {
    let Some(deg) = f.degree() else {
        return false;
    };
    if !f.leading_coef().is_some_and(One::is_one) {
        return false;
    }
    for (expected_r, (e, c)) in f.terms().rev().enumerate() {
        let gap = deg - e;
        if gap % k != 0 || gap / k != expected_r {
            return false;
        }
        let want_negative = expected_r % 2 == 1;
        if c.is_zero() || c.is_negative() != want_negative {
            return false;
        }
    }
    true
}

/// Splits `mu(T(H, u) - u)` along the root's children. For the
/// nonbacktracking tree this is `prod_{w in N(u)} mu(T(H - u, w))^{e_H(u, w)}`;
/// for the deletion-ordered tree it is the product, over edges `{u, w_1 < ...
/// < w_{k-1}}` at `u`, of `mu(T(H - {u, w_1, ..., w_{i-1}}, w_i))`.
pub fn root_deletion_decomposition_check(h: &Hypergraph, u: VertexId) -> Result<bool> {
    root_deletion_decomposition_check_with(h, u, &TreeLimits::default())
}

pub fn root_deletion_decomposition_check_with(
    h: &Hypergraph,
    u: VertexId,
    limits: &TreeLimits,
) -> Result<bool> {
    let pt = build_path_tree_of_kind(h, u, limits.max_tree_vertices, limits.kind)?;
    let (_, lhs) = tree_polys(&pt, limits)?;
    let subtree_poly = |deleted: &[VertexId], w: VertexId| -> Result<SparsePoly> {
        let (rest, map) = h.delete_vertices(deleted)?;
        let w_new = map.old_to_new[w].expect("continuation vertex survives");
        let sub = build_path_tree_of_kind(&rest, w_new, limits.max_tree_vertices, limits.kind)?;
        matching_polynomial_with(&sub.tree, &limits.matching)
    };
    let mut rhs = SparsePoly::one();
    match limits.kind {
        PathTreeKind::Nonbacktracking => {
            for w in h.neighbors(u) {
                let mult = h.codegree(u, w) as u32;
                rhs = &rhs * &subtree_poly(&[u], w)?.pow(mult);
            }
        }
        PathTreeKind::DeletionOrdered => {
            for &f in h.incident(u) {
                let mut deleted = vec![u];
                for w in h.edges()[f].iter().filter(|&w| w != u) {
                    rhs = &rhs * &subtree_poly(&deleted, w)?;
                    deleted.push(w);
                }
            }
        }
    }
    Ok(lhs == rhs)
}
