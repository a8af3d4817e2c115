use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("the zero polynomial has every integer as a root")]
    ZeroPolynomial,
    #[error("interpolation: {0}")]
    Interpolation(String),
    #[error("invalid argument `{flag}`: {reason}")]
    InvalidArgument { flag: &'static str, reason: String },
    #[error("not a singular vector: {0}")]
    NotSingular(String),
    #[error("basis vector v[{0}] does not exist in this module")]
    MissingBasisVector(i64),
    #[error("level {level} exceeds the cached cap {cap}")]
    LevelCap { level: usize, cap: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(flag: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            flag,
            reason: reason.into(),
        }
    }

    /// Whether the error signals a mathematical inconsistency rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
