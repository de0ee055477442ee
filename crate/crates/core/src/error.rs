use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("not an L-space knot: {0}")]
    NotLSpaceKnot(String),
    #[error("not an L-space link: {0}")]
    NotLSpaceLink(String),
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("surgery is not a rational homology sphere: {0}")]
    NotRationalHomologySphere(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("not an L-space: {0}")]
    NotLSpace(String),
    #[error("unknown link: {0}")]
    UnknownLink(String),
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
