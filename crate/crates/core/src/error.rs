use thiserror::Error;

/// Errors raised by the library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term of the matrix polynomial is not invertible")]
    SingularConstantTerm,
    #[error("det q(0) = {0}, expected +1 or -1")]
    NonUnimodularConstantTerm(String),
    #[error("matrix polynomial has negative exponents; power-series inversion needs a polynomial")]
    NegativeExponent,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid Calabi-Yau datum: {0}")]
    InvalidDatum(String),
    #[error("dimension-1 datum requires a disjoint union of directed cycles, each with a positive-weight arrow: {0}")]
    InvalidDimOneQuiver(String),
    #[error("mesh compatibility N(t) = P t^L N(t^-1)^T fails at entry ({row}, {col})")]
    MeshIncompatible { row: usize, col: usize },
    #[error("N(t) does not commute with P t^L (entry ({row}, {col}))")]
    NonCommuting { row: usize, col: usize },

    #[error("tau is not injective: {0}")]
    TauNotInjective(String),
    #[error("image of tau is not an arrow space: {0}")]
    TauImageNotArrowSpace(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not a twisted weak potential: {0}")]
    NotWeakPotential(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("degree {degree} has {count} paths, above the cap of {cap}")]
    TruncationTooLarge { degree: usize, count: usize, cap: usize },

    #[error("search bounds too large: {0}")]
    BoundsTooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit status: 2 parse, 3 semantic, 4 oracle, 5 search bounds.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            Error::TauNotInjective(_)
            | Error::TauImageNotArrowSpace(_)
            | Error::DegreeMismatch(_)
            | Error::NotWeakPotential(_)
            | Error::InvalidRelation(_)
            | Error::TruncationTooLarge { .. } => 4,
            Error::BoundsTooLarge(_) => 5,
            _ => 3,
        }
    }
}
