use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("quadratic form is not positive definite")]
    IndefiniteForm,

    #[error("negative input to integer square root")]
    NegativeInput,

    #[error("degenerate point set: affine rank {rank}, need {needed}")]
    Degenerate { rank: usize, needed: usize },

    #[error("vertex {index} does not lie on the sphere through the other vertices")]
    NotCospherical { index: usize },

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("lattice basis is not of full rank")]
    SingularBasis,

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("enumeration exceeded the node limit of {limit}")]
    EnumerationLimit { limit: u64 },

    #[error("instance is not a Delaunay polytope: {0}")]
    NotDelaunay(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
