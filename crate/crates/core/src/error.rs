use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed expression: {0}")]
    Parse(String),
    #[error("value {0} is outside (0, 1)")]
    OutOfRange(String),
    #[error("value {value} coincides with the excluded boundary {boundary}")]
    Boundary { value: String, boundary: String },
    #[error("index {index} is outside the certified window [0, {max}]")]
    Window { index: u64, max: u64 },
    #[error("window {window} must be smaller than the denominator {denominator}")]
    WindowTooLarge { window: u64, denominator: String },
    #[error("regime mismatch: {0}")]
    Regime(String),
    #[error("certification failed at m = {0}")]
    Uncertified(u64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("closed form disagrees with direct evaluation: {0}")]
    Inconsistent(String),
    #[error("non-finite simulation state: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
