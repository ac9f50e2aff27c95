use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid character at position {0}")]
    InvalidCharacter(usize),
    #[error("no valid sequence in input")]
    EmptyInput,
    #[error("k must lie in 2..=63, got {0}")]
    InvalidK(usize),
    #[error("sequences have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("no read is long enough to contribute an arc")]
    EmptyGraph,
    #[error("no such arc: {0} -> {1}")]
    NoSuchArc(String, String),
    #[error("no such vertex: {0}")]
    NoSuchVertex(String),
    #[error("mutation rate must lie in [0, 1], got {0}")]
    InvalidAlpha(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid planted-bubble specification: {0}")]
    InvalidSpec(String),
    #[error("graph has {0} vertices; the brute-force oracle accepts at most {1}")]
    OracleRefused(usize, usize),
    #[error("malformed graph file: {0}")]
    Format(String),
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
