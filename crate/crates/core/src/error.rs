use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported Cartan type {family}{rank}: {reason}")]
    InvalidCartanType {
        family: char,
        rank: usize,
        reason: String,
    },

    #[error("matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("not a permutation of 1..{rank}: {perm:?}")]
    NotAPermutation { perm: Vec<usize>, rank: usize },

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("non-integral solution at entry ({i},{j}): {value}")]
    NonIntegral { i: usize, j: usize, value: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
