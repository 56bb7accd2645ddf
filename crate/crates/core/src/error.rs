use thiserror::Error;

/// Errors reported by graph construction and the algorithms built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex id {id} out of range for a digraph on {n} vertices")]
    VertexOutOfRange { id: usize, n: usize },
    #[error("arc {0} -> {1} given more than once")]
    DuplicateArc(usize, usize),
    #[error("label {0:?} used for more than one vertex")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("arc {0} -> {1} is not in the digraph")]
    ArcAbsent(usize, usize),
    #[error("arcs {0:?} and {1:?} share an endpoint")]
    NotAMatching((usize, usize), (usize, usize)),
    #[error("vertex {0} has been removed")]
    DeadVertex(usize),
    #[error("vertex {0} has an empty neighborhood in the requested direction")]
    EmptyNeighborhood(usize),
    #[error("digraph is not reflexive (vertex {0} has no loop)")]
    NotReflexive(usize),
    #[error("digraph is not an ST graph (vertex {0} is neither a source nor a sink)")]
    NotStGraph(usize),
    #[error("matching is not perfect (vertex {0} is uncovered)")]
    NotPerfectMatching(usize),
    #[error("digraph is not an order graph: {0}")]
    NotOrderGraph(String),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("isomorphism check failed: {0}")]
    IsomorphismFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
