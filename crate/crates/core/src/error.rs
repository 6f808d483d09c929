use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("sl_{0} is not simple (need N >= 2)")]
    NotSimple(usize),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("division by zero")]
    ZeroDivision,

    #[error("pole: denominator factor {factor} vanishes")]
    Pole { factor: String },

    #[error("truncation exceeded: weight {weight} > D = {max}")]
    Truncation { weight: i64, max: i64 },

    #[error("critical level: k = -h^vee = {0}")]
    CriticalLevel(i64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("cache invalid: {0}")]
    CacheInvalid(String),

    #[error("configuration error: {0}")]
    Config(String),

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

pub type Result<T> = std::result::Result<T, Error>;
