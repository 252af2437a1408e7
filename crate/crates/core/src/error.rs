use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter pole: {0}")]
    ParameterPole(String),
    #[error("nonterminating series: no upper parameter is a nonpositive integer within {n_terms} terms")]
    Nonterminating { n_terms: usize },
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("non-unit constant term")]
    NonUnitConstant,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("coefficient index {index} out of range for order {order}")]
    IndexOutOfRange { index: i64, order: usize },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degree {n} exceeds the supported maximum {max}")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("grid too small: {got} points per axis, degree bound requires at least {needed}")]
    GridTooSmall { needed: usize, got: usize },
    #[error("unknown identifier `{0}`")]
    Unknown(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
