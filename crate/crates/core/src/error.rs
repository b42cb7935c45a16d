use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("quiver has no vertices")]
    EmptyQuiver,

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("matrix dimension mismatch: {left_rows}x{left_cols} times {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("representation does not match quiver: {0}")]
    RepMismatch(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("malformed representation JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
