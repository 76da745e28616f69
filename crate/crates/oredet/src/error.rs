//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("all-zero vector has no primitive part")]
    AllZeroVector,

    #[error("row scale coefficient must be nonzero")]
    ZeroScale,

    #[error("row operation requires two distinct rows")]
    SameRow,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix size {n} exceeds brute-force limit {limit}")]
    MatrixTooLarge { n: usize, limit: usize },

    #[error("determinant is zero")]
    ZeroDeterminant,

    #[error("every permutation meets a zero entry; total order is -infinity")]
    StructurallySingular,

    #[error("the given (N, h) vectors are not a majorant of the matrix")]
    NotAMajorant,

    #[error("the given majorant is not optimal")]
    NotOptimalMajorant,

    #[error("matrix is nonsingular; no kernel relation exists")]
    NoKernel,

    #[error("degeneracy degree is {found}, but the reduction requires exactly 1")]
    DegeneracyNotOne { found: i64 },

    #[error("matrix entries must lie in Q[x][d] (no x-denominators)")]
    NotInSubring,

    #[error("syntax error at column {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("invalid matrix document: {0}")]
    Document(String),

    #[error("generator gave up on target {target} after {attempts} attempts")]
    GeneratorExhausted { target: String, attempts: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code the CLI maps this error to.
    ///
    /// 1 = input / I-O / internal failure, 2 = domain precondition violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Document(_) | Error::Io(_) | Error::Internal(_) => 1,
            _ => 2,
        }
    }
}
