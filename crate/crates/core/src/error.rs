use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("graph is not connected")]
    Disconnected,

    #[error("cannot satisfy generator request: {0}")]
    Unsatisfiable(String),

    #[error("configuration has {found} entries but the graph has {expected} vertices")]
    SizeMismatch { expected: usize, found: usize },

    #[error("{what} exceeded its cap of {cap}")]
    ResourceExhausted { what: &'static str, cap: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
