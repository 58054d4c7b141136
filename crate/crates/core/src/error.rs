use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("root of unity of order {requested} is not in the field of level {level}")]
    LevelMismatch { requested: u32, level: u32 },
    #[error("session level already fixed at {current}, cannot change to {requested}")]
    LevelFixed { current: u32, requested: u32 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("Jacobi identity fails on {count} basis triples, first {first:?}")]
    JacobiViolation { count: usize, first: (usize, usize, usize) },
    #[error("subspace is not closed under the bracket")]
    NotSubalgebra,
    #[error("subspaces live in different ambient algebras")]
    AmbientMismatch,
    #[error("not a Cartan subalgebra: {0}")]
    NotCartan(String),
    #[error("classification failed: {0}")]
    ClassificationFailure(String),
    #[error("module decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("invalid type {kind}{rank}")]
    InvalidType { kind: char, rank: usize },
    #[error("map does not preserve the bracket: {0}")]
    NotHomomorphism(String),
    #[error("map is not invertible")]
    NotInvertible,
    #[error("no finite order up to {bound}")]
    InfiniteOrder { bound: usize },
    #[error("realization is not stable under the map: {0}")]
    NotStable(String),
    #[error("automorphisms {first} and {second} do not commute")]
    NonCommuting { first: usize, second: usize },
    #[error("automorphism {index} is not diagonalizable over the field")]
    NotDiagonalizable { index: usize },
    #[error("decomposition is not a grading: {0}")]
    NotGraded(String),
    #[error("generator images are inconsistent: {0}")]
    InconsistentImages(String),
    #[error("no normalization satisfies the constraints: {0}")]
    NoNormalization(String),
    #[error("unknown generator or word: {0}")]
    UnknownGenerator(String),
    #[error("exponent vector has length {got}, expected {expected}")]
    ExponentLength { got: usize, expected: usize },
    #[error("element is not in the twisted algebra: {0}")]
    NotInTwisted(String),
    #[error("cocycle reading is ambiguous: {0}")]
    AmbiguousCocycle(String),
    #[error("length class {0} is not an integer")]
    NonIntegralClass(String),
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("rank {rank} is outside the valid range for {entry}")]
    RankOutOfRange { entry: String, rank: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
