use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field specification: {0}")]
    InvalidField(String),
    #[error("field cannot host the requested constant: {0}")]
    Unavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree mismatch: {0}")]
    Degree(String),
    #[error("invalid projective point: {0}")]
    InvalidPoint(String),
    #[error("unknown configuration `{0}`")]
    UnknownConfig(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("characteristic {p} too small: need p > {bound}")]
    Characteristic { p: u64, bound: u64 },
    #[error("randomized results disagree: {0}")]
    Disagreement(String),
    #[error("rank did not stabilize: {0}")]
    NotStabilized(String),
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("solution not unique: {0}")]
    NotUnique(String),
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code used in JSON reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "invalid_field",
            Error::Unavailable(_) => "unavailable",
            Error::Parse(_) => "parse",
            Error::Dimension(_) => "dimension",
            Error::Degree(_) => "degree",
            Error::InvalidPoint(_) => "invalid_point",
            Error::UnknownConfig(_) => "unknown_config",
            Error::InvalidConfig(_) => "invalid_config",
            Error::Characteristic { .. } => "characteristic",
            Error::Disagreement(_) => "disagreement",
            Error::NotStabilized(_) => "not_stabilized",
            Error::NoSolution(_) => "no_solution",
            Error::NotUnique(_) => "not_unique",
            Error::Invalid(_) => "invalid",
        }
    }
}
