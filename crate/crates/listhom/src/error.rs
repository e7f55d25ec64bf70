use crate::graph::Graph;

/// Errors shared across the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A caller-supplied value violated a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An operation that requires a connected graph saw an unreachable vertex.
    #[error("graph is not connected: vertex {unreachable} is unreachable from {start}")]
    NotConnected { start: usize, unreachable: usize },

    /// The solver met a connected induced subgraph with no multi-chain
    /// ordering, so the answer cannot be decided by this algorithm.
    /// Carries the offending subgraph in its own 0-based indexing.
    #[error("no multi-chain ordering exists for a connected induced subgraph on {} vertices", subgraph.vertex_count())]
    NotInClass { subgraph: Graph },

    /// The exhaustive oracle refused an instance above its size cap.
    #[error("instance too large for exhaustive search: {n} vertices exceeds cap {cap}")]
    SizeLimitExceeded { n: usize, cap: usize },

    /// An internal invariant was violated; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
