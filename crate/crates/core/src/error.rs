use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cycle detected: edge {tail} -> {head} closes a directed cycle")]
    CycleDetected { tail: String, head: String },

    #[error("duplicate edge {tail} -> {head}")]
    DuplicateEdge { tail: String, head: String },

    #[error("self-loop on node {0}")]
    SelfLoop(String),

    #[error("node {0} is declared more than once")]
    DuplicateNode(String),

    #[error("unknown node id {0:?}")]
    UnknownNode(String),

    #[error("source and target are the same node ({0})")]
    DegenerateSourceTarget(String),

    #[error("no path from source {source_id} to target {target_id}")]
    NoSourceTargetPath { source_id: String, target_id: String },

    #[error("no path from {from} to {to}")]
    NoPath { from: String, to: String },

    #[error("probability {0} is outside the open interval (0, 1)")]
    InvalidProbability(f64),

    #[error(
        "graph has {edges} edges, exact evaluation is limited to {max_edges}; \
         use the Monte Carlo estimator (--method mc) instead"
    )]
    TooLarge { edges: usize, max_edges: usize },

    #[error("adding a path {u} -> {v} would create a cycle (a path {v} -> {u} exists)")]
    WouldCreateCycle { u: String, v: String },

    #[error("cannot contract paths: node {node} has neighbor {neighbor} outside the contracted set")]
    PreconditionViolated { node: String, neighbor: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
