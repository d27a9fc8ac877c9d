use std::io;

use thiserror::Error;

/// Errors produced by the code constructions, the stabilizer algebra and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is singular modulo {p}")]
    Singular { p: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("rows {0} and {1} do not commute")]
    NotOrthogonal(usize, usize),

    #[error("invalid channel parameter {0}: must lie in [0, 0.75)")]
    ChannelParameter(f64),

    #[error("brute-force decoding refused for n = {0} (limit is 14)")]
    TooLarge(usize),

    #[error("QPC parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
