use thiserror::Error;

/// Errors raised by the library. Messages name the violated precondition.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not quadratic: leading coefficient is zero")]
    NotQuadratic,
    #[error("parameter excluded: {0}")]
    ParameterExcluded(String),
    #[error("degenerate pair: {0}")]
    DegeneratePair(String),
    #[error("dynatomic division failed")]
    DynatomicDivision,
    #[error("zero polynomial has all roots")]
    ZeroPolynomial,
    #[error("not a common periodic point: {0}")]
    NotCommonPeriodic(String),
    #[error("maps coincide up to sign")]
    MapsCoincide,
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("unsupported period {0}")]
    UnsupportedPeriod(u32),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn excluded(what: impl std::fmt::Display) -> Error {
    Error::ParameterExcluded(what.to_string())
}
