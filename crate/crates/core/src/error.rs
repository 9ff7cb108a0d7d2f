use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for digraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("point {point} out of range for family on {n} points")]
    PointOutOfRange { point: usize, n: usize },

    #[error("family has {blocks} blocks on {n} points, expected a symmetric family")]
    NotSymmetric { blocks: usize, n: usize },

    #[error("family has no system of distinct representatives")]
    NoSdr,

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("{0} is not a prime power")]
    NotPrimePower(usize),

    #[error("field order {q} exceeds the configured cap {cap}")]
    FieldCapExceeded { q: usize, cap: usize },

    #[error("{0} is not a cyclic difference cover")]
    NotDifferenceCover(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}
