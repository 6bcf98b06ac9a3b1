use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inadmissible index: {0}")]
    Inadmissible(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("invalid precision context: {0}")]
    Precision(String),
    #[error("convergence condition violated: {0}")]
    Condition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
