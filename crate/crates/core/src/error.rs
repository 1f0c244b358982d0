use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on node {0} ({0}, {0})")]
    SelfLoop(NodeId),

    #[error("node id {node} out of range for a graph of {node_count} nodes")]
    NodeOutOfRange { node: NodeId, node_count: usize },

    #[error("node {0} has already been disconnected")]
    AlreadyDisconnected(NodeId),

    #[error("node {0} is not alive")]
    DeadNode(NodeId),

    #[error("attacks require a fresh graph, but {dead} of {node_count} nodes are already disconnected")]
    PartiallyAttacked { dead: usize, node_count: usize },

    #[error("the random strategy requires a seed")]
    MissingSeed,

    #[error("trace is incomplete: {strikes} strikes recorded for {original_n} nodes")]
    IncompleteTrace { strikes: usize, original_n: usize },

    #[error("prefix length {a} outside 1..={original_n}")]
    PrefixOutOfRange { a: usize, original_n: usize },

    #[error("traces disagree on network size ({expected} vs {found})")]
    MismatchedTraces { expected: usize, found: usize },

    #[error("breaking point needs a miuz trace")]
    MissingMiuzTrace,

    #[error("threshold must be a non-negative number, got {0}")]
    InvalidThreshold(f64),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("degree sequence has odd sum {0}")]
    OddDegreeSum(usize),

    #[error("requested degree {degree} for node {node} exceeds n - 1 = {max}")]
    DegreeTooLarge { node: NodeId, degree: usize, max: usize },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("cell (alpha={alpha}, replicate={replicate}, metric={metric}) failed: {source}")]
    Cell {
        alpha: f64,
        replicate: usize,
        metric: String,
        #[source]
        source: Box<Error>,
    },
}
