//! Exact matching polynomials of k-uniform hypergraphs, their path trees,
//! rigorous enclosures of the largest zero, and adjacency-tensor cross-checks.

pub mod checks;
pub mod error;
pub mod hypergraph;
pub mod matchpoly;
pub mod pathtree;
pub mod poly;
pub mod tensor;
pub mod zeros;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, VertexId};
pub use poly::SparsePoly;
