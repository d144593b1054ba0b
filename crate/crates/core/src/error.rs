use std::io;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("order {0} is outside the supported range 1..={1}")]
    OrderOutOfRange(usize, usize),

    #[error("invalid signed permutation: {0}")]
    InvalidPermutation(String),

    #[error("malformed colored graph: {0}")]
    MalformedGraph(String),

    #[error("malformed s6 record: {0}")]
    MalformedRecord(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("spectrum parse error: {0}")]
    SpectrumParse(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("census error: {0}")]
    Census(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
