use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid Robin parameter: {0}")]
    InvalidParam(String),

    #[error("x = {0} lies outside [-pi/2, pi/2]")]
    OutsideInterval(f64),

    #[error("point ({0}, {1}) lies outside the closed square")]
    OutsideSquare(f64, f64),

    #[error("{op} requires {requirement}")]
    Precondition {
        op: &'static str,
        requirement: String,
    },

    #[error("level {level} is outside the open range ({lo}, {hi})")]
    LevelOutOfRange { level: f64, lo: f64, hi: f64 },

    #[error("no sign change on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    #[error("nodal count did not stabilize; (resolution, domains) = {history:?}")]
    Unstable { history: Vec<(usize, usize)> },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

impl Error {
    pub(crate) fn precondition(op: &'static str, requirement: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            requirement: requirement.into(),
        }
    }
}
