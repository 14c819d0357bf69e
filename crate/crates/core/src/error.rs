use thiserror::Error;

use crate::ratlinalg::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error(
        "graph has {n} nodes, above the cycle-enumeration limit of {limit}; \
         raise the limit explicitly (enumeration cost is exponential)"
    )]
    NodeLimitExceeded { n: usize, limit: usize },

    #[error("node {0} is not a leaf of the tree")]
    NotALeaf(usize),

    #[error("node {0} is not in the tree")]
    UnknownNode(usize),

    #[error("no bidirectional spanning tree; bidirectional components: {}", fmt_components(.components))]
    NoSpanningTree { components: Vec<Vec<usize>> },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("gamma must be strictly positive, got {0}")]
    NonPositiveGamma(Rational),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("partition admits arc ({from},{to}) from V1 into V2; the bound does not apply")]
    PartitionArc { from: usize, to: usize },

    #[error("internal contract breach: {0}")]
    ContractBreach(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message} (expected {schema})")]
    Format {
        path: String,
        message: String,
        schema: &'static str,
    },
}

fn fmt_components(components: &[Vec<usize>]) -> String {
    components
        .iter()
        .map(|c| {
            let ids: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", ids.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}
