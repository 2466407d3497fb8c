use thiserror::Error;

use crate::graph::NodeId;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0}")]
    SelfLoop(NodeId),

    #[error("node {node} out of range for a graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },

    #[error("graph is disconnected: no path from {from} to {to}")]
    Disconnected { from: NodeId, to: NodeId },

    #[error("node {0} has no neighbors")]
    IsolatedNode(NodeId),

    #[error("{what}: size {size} exceeds cap {cap}{hint}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
        hint: &'static str,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "solver did not converge for column {column}: relative residual {residual:.3e} after {iterations} iterations"
    )]
    SolverDiverged {
        column: usize,
        residual: f64,
        iterations: usize,
    },

    #[error("linear system is singular ({0})")]
    Singular(&'static str),

    #[error("walk from node {start} exceeded {max_steps} steps in trial {trial}")]
    StepLimit {
        start: NodeId,
        trial: u64,
        max_steps: u64,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no edges")]
    EmptyEdgeSet,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
