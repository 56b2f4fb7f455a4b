//! k-uniform hypergraphs over dense vertex ids.
//!
//! A [`Hypergraph`] is immutable once built. Every structural operation
//! (vertex deletion, weak edge deletion, component restriction) returns a
//! fresh value whose vertices are re-indexed by the order-preserving map
//! onto `0..n'`; the map comes back as a [`Relabeling`] where callers need it.

mod generate;
mod hgr;

pub use generate::{random_connected_kgraph, random_ktree};
pub use hgr::{parse, serialize};

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A k-subset of the vertex set, stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge(Vec<VertexId>);

impl Edge {
    pub(crate) fn from_sorted(vertices: Vec<VertexId>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Edge(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.0.iter().copied()
    }
}

/// Order-preserving vertex map produced by deletions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub old_to_new: Vec<Option<VertexId>>,
    pub new_to_old: Vec<VertexId>,
}

impl Relabeling {
    fn keeping(n: usize, keep: impl Fn(VertexId) -> bool) -> Self {
        let mut old_to_new = vec![None; n];
        let mut new_to_old = Vec::new();
        for (v, slot) in old_to_new.iter_mut().enumerate() {
            if keep(v) {
                *slot = Some(new_to_old.len());
                new_to_old.push(v);
            }
        }
        Relabeling {
            old_to_new,
            new_to_old,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeProfile {
    pub degrees: Vec<usize>,
    pub max: usize,
    pub min: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    k: usize,
    n: usize,
    edges: Vec<Edge>,
    incidence: Vec<Vec<usize>>,
}

impl Hypergraph {
    /// Validates and builds a k-graph. Each edge may be given in any order;
    /// it is stored sorted.
    pub fn new(k: usize, n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::BadArity(format!("k = {k}, need k >= 2")));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        let mut stored = Vec::with_capacity(edges.len());
        for mut e in edges {
            if e.len() != k {
                return Err(Error::BadArity(format!(
                    "edge {e:?} has {} vertices, expected {k}",
                    e.len()
                )));
            }
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadArity(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::IdOutOfRange { id: v, limit: n });
            }
            if !seen.insert(e.clone()) {
                return Err(Error::DuplicateEdge(e));
            }
            stored.push(Edge(e));
        }
        Ok(Self::from_checked(k, n, stored))
    }

    pub(crate) fn from_checked(k: usize, n: usize, edges: Vec<Edge>) -> Self {
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for v in e.iter() {
                incidence[v].push(i);
            }
        }
        Hypergraph {
            k,
            n,
            edges,
            incidence,
        }
    }

    pub fn edgeless(k: usize, n: usize) -> Result<Self> {
        Self::new(k, n, Vec::new())
    }

    /// All C(n,k) k-subsets of `0..n`, in lexicographic order.
    pub fn complete(n: usize, k: usize) -> Result<Self> {
        if k < 2 || n < k {
            return Err(Error::BadArity(format!("complete graph needs n >= k >= 2, got n={n}, k={k}")));
        }
        Self::new(k, n, k_subsets(n, k))
    }

    /// The k-star with `delta` edges: vertex 0 is the center, each edge adds
    /// k-1 fresh leaves.
    pub fn star(k: usize, delta: usize) -> Result<Self> {
        if delta == 0 {
            return Self::edgeless(k, 1);
        }
        let n = 1 + delta * k.saturating_sub(1);
        let edges = (0..delta)
            .map(|i| {
                let mut e = vec![0];
                e.extend((0..k.saturating_sub(1)).map(|j| 1 + i * (k - 1) + j));
                e
            })
            .collect();
        Self::new(k, n, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Result<&Edge> {
        self.edges.get(i).ok_or(Error::IdOutOfRange {
            id: i,
            limit: self.edges.len(),
        })
    }

    /// Indices of the edges containing `v`, increasing.
    pub fn incident(&self, v: VertexId) -> &[usize] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    /// Vertices sharing an edge with `v`, increasing.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<_> = self.incidence[v]
            .iter()
            .flat_map(|&e| self.edges[e].iter())
            .filter(|&w| w != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Number of edges containing both `u` and `v`.
    pub fn codegree(&self, u: VertexId, v: VertexId) -> usize {
        self.incidence[u]
            .iter()
            .filter(|&&e| self.edges[e].contains(v))
            .count()
    }

    pub fn find_edge(&self, vertices: &[VertexId]) -> Option<usize> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        let first = *key.first()?;
        if first >= self.n {
            return None;
        }
        self.incidence[first]
            .iter()
            .copied()
            .find(|&e| self.edges[e].0 == key)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let degrees: Vec<usize> = self.incidence.iter().map(Vec::len).collect();
        let max = degrees.iter().copied().max().unwrap_or(0);
        let min = degrees.iter().copied().min().unwrap_or(0);
        DegreeProfile { degrees, max, min }
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Induced subgraph on `V \ W`, re-indexed.
    pub fn delete_vertices(&self, w: &[VertexId]) -> Result<(Hypergraph, Relabeling)> {
        let mut removed = vec![false; self.n];
        for &v in w {
            if v >= self.n {
                return Err(Error::IdOutOfRange { id: v, limit: self.n });
            }
            removed[v] = true;
        }
        let map = Relabeling::keeping(self.n, |v| !removed[v]);
        let edges = self
            .edges
            .iter()
            .filter(|e| e.iter().all(|v| !removed[v]))
            .map(|e| Edge(e.iter().map(|v| map.old_to_new[v].unwrap()).collect()))
            .collect();
        Ok((
            Self::from_checked(self.k, map.new_to_old.len(), edges),
            map,
        ))
    }

    /// `H - e`: delete every vertex of edge `e`.
    pub fn delete_edge_vertices(&self, e: usize) -> Result<(Hypergraph, Relabeling)> {
        let verts = self.edge(e)?.0.clone();
        self.delete_vertices(&verts)
    }

    /// `H \ e`: drop edge `e`, then the vertices of `e` left isolated.
    pub fn weak_delete_edge(&self, e: usize) -> Result<Hypergraph> {
        Ok(self.weak_delete_edge_mapped(e)?.0)
    }

    pub fn weak_delete_edge_mapped(&self, e: usize) -> Result<(Hypergraph, Relabeling)> {
        let dropped = self.edge(e)?;
        let map = Relabeling::keeping(self.n, |v| !(dropped.contains(v) && self.degree(v) == 1));
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, f)| Edge(f.iter().map(|v| map.old_to_new[v].unwrap()).collect()))
            .collect();
        Ok((
            Self::from_checked(self.k, map.new_to_old.len(), edges),
            map,
        ))
    }

    /// Subhypergraph spanned by a subset of edges (vertices = their union),
    /// re-indexed; edges keep their relative order.
    pub fn edge_subgraph(&self, edge_ids: &[usize]) -> Result<(Hypergraph, Relabeling)> {
        let mut used = vec![false; self.n];
        for &i in edge_ids {
            for v in self.edge(i)?.iter() {
                used[v] = true;
            }
        }
        let map = Relabeling::keeping(self.n, |v| used[v]);
        let mut ids = edge_ids.to_vec();
        ids.sort_unstable();
        ids.dedup();
        let edges = ids
            .iter()
            .map(|&i| Edge(self.edges[i].iter().map(|v| map.old_to_new[v].unwrap()).collect()))
            .collect();
        Ok((
            Self::from_checked(self.k, map.new_to_old.len(), edges),
            map,
        ))
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &e in &self.incidence[v] {
                    for w in self.edges[e].iter() {
                        if comp[w] == usize::MAX {
                            comp[w] = id;
                            members.push(w);
                            queue.push_back(w);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The component containing `u`, re-indexed.
    pub fn component_of(&self, u: VertexId) -> Result<(Hypergraph, Relabeling)> {
        if u >= self.n {
            return Err(Error::IdOutOfRange { id: u, limit: self.n });
        }
        let members = self
            .components()
            .into_iter()
            .find(|c| c.binary_search(&u).is_ok())
            .expect("every vertex lies in a component");
        let mut keep = vec![false; self.n];
        for v in members {
            keep[v] = true;
        }
        let drop: Vec<_> = (0..self.n).filter(|&v| !keep[v]).collect();
        self.delete_vertices(&drop)
    }

    /// Connected and `|V| = |E|(k-1) + 1`.
    pub fn is_ktree(&self) -> bool {
        self.n == self.edges.len() * (self.k - 1) + 1 && self.is_connected()
    }

    /// Every component is a k-tree (isolated vertices count as trivial trees).
    pub fn is_kforest(&self) -> bool {
        let comps = self.components();
        let mut edges_per = vec![0usize; comps.len()];
        let mut comp_of = vec![0usize; self.n];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        for e in &self.edges {
            edges_per[comp_of[e.0[0]]] += 1;
        }
        comps
            .iter()
            .zip(&edges_per)
            .all(|(c, &m)| c.len() == m * (self.k - 1) + 1)
    }

    /// True when some vertex lies in every edge.
    pub fn edges_share_common_vertex(&self) -> bool {
        match self.edges.first() {
            None => true,
            Some(first) => first
                .iter()
                .any(|v| self.incidence[v].len() == self.edges.len()),
        }
    }

    pub fn disjoint_union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.k != other.k {
            return Err(Error::BadArity(format!("cannot join a {}-graph and a {}-graph", self.k, other.k)));
        }
        let shift = self.n;
        let mut edges = self.edges.clone();
        edges.extend(
            other
                .edges
                .iter()
                .map(|e| Edge(e.iter().map(|v| v + shift).collect())),
        );
        Ok(Self::from_checked(self.k, self.n + other.n, edges))
    }

    /// Adds one edge; fails on a duplicate.
    pub fn with_edge(&self, vertices: Vec<VertexId>) -> Result<Hypergraph> {
        let mut all: Vec<Vec<VertexId>> = self.edges.iter().map(|e| e.0.clone()).collect();
        all.push(vertices);
        Self::new(self.k, self.n, all)
    }

    /// Removes one edge, keeping every vertex.
    pub fn without_edge(&self, e: usize) -> Result<Hypergraph> {
        self.edge(e)?;
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != e)
            .map(|(_, f)| f.clone())
            .collect();
        Ok(Self::from_checked(self.k, self.n, edges))
    }
}

/// All k-subsets of `0..n` in lexicographic order.
pub(crate) fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k43() -> Hypergraph {
        Hypergraph::new(3, 4, vec![vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3], vec![0, 1, 2]]).unwrap()
    }

    #[test]
    fn degrees() {
        let p = k43().degree_profile();
        assert_eq!(p.degrees, vec![3, 3, 3, 3]);
        assert_eq!((p.max, p.min), (3, 3));

        let p = Hypergraph::star(3, 4).unwrap().degree_profile();
        assert_eq!(p.max, 4);
        assert_eq!(p.min, 1);
        assert_eq!(p.degrees[0], 4);

        let p = Hypergraph::complete(3, 3).unwrap().degree_profile();
        assert_eq!(p.degrees, vec![1, 1, 1]);

        let p = Hypergraph::edgeless(2, 3).unwrap().degree_profile();
        assert_eq!((p.max, p.min), (0, 0));
    }

    #[test]
    fn vertex_deletion() {
        let h = k43();
        let (g, map) = h.delete_vertices(&[0]).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.num_edges(), 1);
        assert_eq!(g.edges()[0].vertices(), &[0, 1, 2]);
        assert_eq!(map.new_to_old, vec![1, 2, 3]);

        let (same, _) = h.delete_vertices(&[]).unwrap();
        assert_eq!(same, h);

        let (empty, _) = h.delete_vertices(&[0, 1, 2, 3]).unwrap();
        assert_eq!((empty.n(), empty.num_edges()), (0, 0));

        assert!(matches!(h.delete_vertices(&[4]), Err(Error::IdOutOfRange { .. })));
    }

    #[test]
    fn weak_edge_deletion() {
        let single = Hypergraph::complete(3, 3).unwrap();
        let g = single.weak_delete_edge(0).unwrap();
        assert_eq!((g.n(), g.num_edges()), (0, 0));

        // two triples sharing vertex 2
        let h = Hypergraph::new(3, 5, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        let g = h.weak_delete_edge(0).unwrap();
        assert_eq!((g.n(), g.num_edges()), (3, 1));
        assert_eq!(g.degree_profile().min, 1);

        let g = k43().weak_delete_edge(3).unwrap();
        assert_eq!((g.n(), g.num_edges()), (4, 3));

        assert!(k43().weak_delete_edge(4).is_err());
    }

    #[test]
    fn connectivity() {
        assert_eq!(k43().components().len(), 1);
        let two = Hypergraph::new(2, 4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(two.components(), vec![vec![0, 1], vec![2, 3]]);
        let bare = Hypergraph::edgeless(3, 3).unwrap();
        assert_eq!(bare.components(), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn ktree_detection() {
        assert!(Hypergraph::complete(4, 4).unwrap().is_ktree());
        assert!(!k43().is_ktree());
        assert!(Hypergraph::star(3, 5).unwrap().is_ktree());
        let forest = Hypergraph::new(2, 5, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!forest.is_ktree());
        assert!(forest.is_kforest());
        assert!(!k43().is_kforest());
    }

    #[test]
    fn complete_graphs() {
        assert_eq!(Hypergraph::complete(4, 3).unwrap(), {
            // lexicographic order differs from the figure's labelling
            Hypergraph::new(3, 4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
        });
        assert_eq!(Hypergraph::complete(3, 3).unwrap().num_edges(), 1);
        assert_eq!(Hypergraph::complete(5, 2).unwrap().num_edges(), 10);
        assert!(matches!(Hypergraph::complete(2, 3), Err(Error::BadArity(_))));
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Hypergraph::new(3, 3, vec![vec![0, 1, 2], vec![2, 1, 0]]),
            Err(Error::DuplicateEdge(_))
        ));
        assert!(matches!(Hypergraph::new(3, 3, vec![vec![0, 1]]), Err(Error::BadArity(_))));
        assert!(matches!(Hypergraph::new(1, 3, vec![]), Err(Error::BadArity(_))));
        assert!(matches!(
            Hypergraph::new(2, 3, vec![vec![0, 3]]),
            Err(Error::IdOutOfRange { id: 3, limit: 3 })
        ));
    }

    #[test]
    fn codegree_and_neighbors() {
        let h = k43();
        assert_eq!(h.neighbors(0), vec![1, 2, 3]);
        assert_eq!(h.codegree(0, 1), 2);
        assert!(!h.edges_share_common_vertex());
        assert!(Hypergraph::star(4, 3).unwrap().edges_share_common_vertex());
    }
}
