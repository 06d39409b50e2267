use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is not live at step {step}", step = .1)]
    DeadVertex(VertexId, usize),
    #[error("cannot contract vertex {0} with itself")]
    SameVertex(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge {0}-{1} already present")]
    DuplicateEdge(VertexId, VertexId),
    #[error("vertex id {0} is already in use")]
    IdInUse(VertexId),
    #[error("step {step}: expected product id {expected}, found {found}")]
    FreshIdMismatch {
        step: usize,
        expected: VertexId,
        found: VertexId,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("line {line}: invalid step: {msg}")]
    InvalidStep { line: usize, msg: String },
    #[error("instance has {size} vertices after reduction, solver cap is {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("input is not a tree: {0}")]
    NotATree(String),
    #[error("trigraph is not an induced subtrigraph of the sequence's initial trigraph")]
    NotInduced,
    #[error("bags do not partition the vertex set: {0}")]
    NotPartition(String),
    #[error("vertex map is not an isomorphism: {0}")]
    NotIsomorphic(String),
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("width bound violated: {0}")]
    BoundViolated(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("no merged pair of twin-blocks at the safe index; threshold {threshold} is too small")]
    ThresholdTooSmall { threshold: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
}
