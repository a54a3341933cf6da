use thiserror::Error;

/// Errors produced by the analysis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: String, v: String },

    #[error("input is not valid UTF-8 text")]
    Encoding,

    #[error("complex is truncated at order {order}; {what} is undefined on a partial enumeration")]
    Truncated { order: usize, what: &'static str },

    #[error("clique level {0} is not available in the complex")]
    MissingLevel(usize),

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("dense {rows}x{cols} bit matrix exceeds the storage limit")]
    MatrixTooLarge { rows: usize, cols: usize },

    #[error("{0} is out of range")]
    OutOfRange(String),

    #[error("invalid program: {0}")]
    InvalidProgram(String),

    #[error("solver node limit of {0} exceeded")]
    NodeLimit(u64),

    #[error("cavity search for order {order} found {found} of {expected} certificates before reaching length {ceiling}")]
    SearchExhausted {
        order: usize,
        found: usize,
        expected: usize,
        ceiling: usize,
    },

    #[error("unknown node label {0}")]
    UnknownNode(String),

    #[error("{0} is not a clique of the complex")]
    UnknownClique(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
