use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("graph has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {{{0},{1}}}")]
    DuplicateEdge(usize, usize),

    #[error("edge not in graph: {{{0},{1}}}")]
    EdgeNotInGraph(usize, usize),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not bipartite")]
    NotBipartite,

    #[error("graph too large for automorphism enumeration: n = {n} exceeds cap {cap}")]
    AutomorphismCap { n: usize, cap: usize },

    #[error("enumeration cap exceeded: n = {n}, k = {k} (limit n <= {limit} for this k)")]
    EnumerationCap { n: usize, k: usize, limit: usize },

    #[error("brute-force work budget exceeded: n = {n}, x = {x}")]
    OracleBudget { n: usize, x: u64 },

    #[error("restraint has {got} sets but graph has {expected} vertices")]
    SizeMismatch { expected: usize, got: usize },

    #[error("invalid k-restraint: {0}")]
    NotKRestraint(String),

    #[error("inconsistent relabeling: {0}")]
    InconsistentRelabeling(String),

    #[error("coefficient undefined: {0}")]
    CoefficientUndefined(String),
}

impl Error {
    /// True for the errors that come from a configured size cap rather than
    /// from malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::AutomorphismCap { .. } | Error::EnumerationCap { .. } | Error::OracleBudget { .. }
        )
    }
}
