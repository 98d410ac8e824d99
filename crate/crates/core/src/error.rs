use thiserror::Error;

use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed permutation text {0:?}")]
    Malformed(String),
    #[error("not a permutation of 1..{len}: {detail}")]
    NotBijection { len: usize, detail: String },
    #[error("permutations longer than 255 are not supported")]
    TooLong,
    #[error("empty position selection")]
    EmptySelection,
    #[error("position {pos} out of range for a permutation of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("sequence index must be at least 1")]
    SequenceIndex,
    #[error("balloon indexes ({i},{j}) out of range for alpha of length {len}")]
    BalloonIndex { i: usize, j: usize, len: usize },
    #[error("reduction table does not apply to monotone beta {0}")]
    MonotoneBeta(Permutation),
    #[error("{0} is not a 2413-balloon")]
    NotABalloon(Permutation),
    #[error("integer overflow while summing Möbius values")]
    Overflow,
    #[error("interval [1, {pi}] has {count} chains, above the limit {limit}")]
    TooManyChains { pi: Permutation, count: String, limit: u128 },
    #[error("invalid chain: {0}")]
    InvalidChain(String),
    #[error("{0}")]
    Precondition(String),
    #[error("n = {n} is above the configured sweep limit {limit}")]
    SweepLimit { n: usize, limit: usize },
    #[error("cache conflict for {key}: stored {stored}, new {new}")]
    CacheConflict { key: String, stored: i64, new: i64 },
    #[error("cache format: {0}")]
    CacheFormat(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
