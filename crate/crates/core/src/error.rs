use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),

    #[error("operation undefined on the empty graph")]
    EmptyGraph,

    #[error("graph has an isolated vertex")]
    IsolatedVertex,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what} is {actual}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("argument outside the function's domain: {0}")]
    Domain(String),

    #[error("power iteration did not converge in {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("partition is not equitable: {0}")]
    NotEquitable(String),

    #[error("vertex sets overlap at vertex {0}")]
    Overlap(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
