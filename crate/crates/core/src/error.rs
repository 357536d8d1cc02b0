use alloc::string::String;
use thiserror::Error;

/// Errors raised by the core algorithms.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },
    #[error("entry ({row}, {col}) = {value} is invalid: {reason}")]
    InvalidEntry {
        row: usize,
        col: usize,
        value: f64,
        reason: &'static str,
    },
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("{name} = {value} is out of range ({expected})")]
    OutOfRange {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("{what} = {value} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("matrix is not positive definite (smallest eigenvalue {0})")]
    NotPositiveDefinite(f64),
    #[error("covariance matrix is rank deficient")]
    RankDeficient,
    #[error("graph contains a cycle through edge ({0}, {1})")]
    HasCycle(usize, usize),
    #[error("repeated edge weight {0}")]
    RepeatedWeight(f64),
    #[error("simplex {0:?} is missing its face {1:?}")]
    MissingFace(alloc::vec::Vec<usize>, alloc::vec::Vec<usize>),
    #[error("duplicate simplex {0:?}")]
    DuplicateSimplex(alloc::vec::Vec<usize>),
    #[error("simplex {0:?} enters the filtration before its face")]
    NonMonotone(alloc::vec::Vec<usize>),
    #[error("persistence diagram contains a point with infinite death")]
    InfiniteDeath,
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
