use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    Range(String),
    #[error("invalid operator: {0}")]
    Operator(String),
    #[error("composition mismatch: {0}")]
    Composition(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("unknown simplex {dim}/{index}")]
    UnknownSimplex { dim: usize, index: usize },
    #[error("malformed simplicial set: {0}")]
    Malformed(String),
    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),
    #[error("map is not well defined on the quotient: {0}")]
    NotWellDefined(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency: {0}")]
    Internal(String),
    #[error("size guard: {0}")]
    Guard(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
