use thiserror::Error;

/// Errors raised by field, matrix, code and channel operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u32),
    #[error("invalid extension degree {0} (need k >= 2)")]
    InvalidDegree(usize),
    #[error("polynomial is not monic irreducible of degree {0}")]
    NotIrreducible(usize),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index tuples have different lengths ({0} vs {1})")]
    TupleLength(usize, usize),
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("matrix is diagonal")]
    DiagonalMatrix,
    #[error("invalid code parameters: {0}")]
    InvalidParams(String),
    #[error("diagonalizer check failed: {0}")]
    Diagonalizer(&'static str),
    #[error("the all-zero point is not a projective point")]
    ZeroPoint,
    #[error("impossible channel spec: {0}")]
    ChannelSpec(String),
    #[error("sampling budget of {0} attempts exhausted")]
    SamplingExhausted(usize),
    #[error("instance too large for exhaustive search: {0}")]
    Scale(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
