use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("bad arity: {0}")]
    BadArity(String),
    #[error("vertex or edge id {id} out of range (limit {limit})")]
    IdOutOfRange { id: usize, limit: usize },
    #[error("malformed input: {0}")]
    Parse(String),
    #[error("resource limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("not a path of the host hypergraph: {0}")]
    BadPath(String),
    #[error("hypergraph has no edges")]
    NoSpectrum,
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("bad certificate: {0}")]
    BadCertificate(String),
    #[error("weights are not a root of the multivariate matching polynomial (value {0})")]
    NotARoot(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
