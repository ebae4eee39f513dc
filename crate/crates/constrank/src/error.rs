use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational from `{0}`")]
    ParseRational(String),
    #[error("the zero polynomial has every real number as a root")]
    ZeroPolynomial,
    #[error("polynomial division by the zero polynomial")]
    ZeroPolyDivisor,
    #[error("inexact polynomial division")]
    InexactDivision,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("matrix is not antisymmetric")]
    NotSkew,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("basis is not linearly independent")]
    DependentBasis,
    #[error("direction already lies in the linear part")]
    DependentDirection,
    #[error("expected {expected} coordinates, got {got}")]
    CoordinateCount { expected: usize, got: usize },
    #[error(
        "symbolic certification cap exceeded (n = {n}, dim = {dim}; caps are n <= {max_n}, \
         dim <= {max_dim}); use sampled mode"
    )]
    SymbolicCapExceeded {
        n: usize,
        dim: usize,
        max_n: usize,
        max_dim: usize,
    },
    #[error("requested rank {rank} exceeds matrix dimensions {rows}x{cols}")]
    RankTooLarge {
        rank: usize,
        rows: usize,
        cols: usize,
    },
    #[error("antisymmetric matrices have even rank, got {0}")]
    OddRank(usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("requires the n >= 2r+2 regime, got n = {n}, r = {r}")]
    RegimeMismatch { n: usize, r: usize },
    #[error("2x2 block is not antipinco")]
    NotAntipinco,
    #[error("block grid incomplete: expected {expected} blocks for m = {m}, got {got}")]
    IncompleteGrid {
        m: usize,
        expected: usize,
        got: usize,
    },
    #[error("base has rank {got}, expected {expected}")]
    BaseRankMismatch { expected: usize, got: usize },
    #[error("unsupported output format for this command: {0}")]
    UnsupportedFormat(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
