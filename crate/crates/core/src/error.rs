use thiserror::Error;

/// Errors raised by the exact computations in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {0} lies outside the unit interval")]
    OutOfUnitInterval(String),
    #[error("{0} is an endpoint; orbits are taken in the open interval (0, 1)")]
    Endpoint(String),
    #[error("point {point} is outside the domain [{lo}, {hi}]")]
    OutOfDomain { point: String, lo: String, hi: String },
    #[error("word does not begin with the prefix {0}")]
    PrefixMismatch(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("map is not square: [{0}] -> [{1}]")]
    NotSquare(String, String),
    #[error("map is not Thompson-like: {0}")]
    NotThompsonLike(String),
    #[error("slope {0} is not a power of two")]
    NotPowerOfTwo(String),
    #[error("{0} is not a dyadic rational")]
    NotDyadic(String),
    #[error("invalid piecewise-linear map: {0}")]
    InvalidMap(String),
    #[error("invalid strand diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram is not reduced")]
    NotReduced,
    #[error("not a one-bump function: {0}")]
    NotOneBump(String),
    #[error("points are not in the same orbit: {0}")]
    OrbitMismatch(String),
    #[error("invalid cut path: {0}")]
    InvalidCut(String),
    #[error("loop structure does not match the fixed-point data: {0}")]
    LoopMismatch(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }

    /// True for syntax errors, as opposed to domain errors on well-formed input.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
