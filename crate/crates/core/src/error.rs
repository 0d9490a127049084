use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Unsupported root system, parabolic, or size limit.
    #[error("configuration error: {0}")]
    Config(String),
    /// An operation was called outside its domain (non-reduced word, element not in W^P, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A theta factor in a denominator vanished at the evaluation point.
    #[error("pole at factor {factor}: |theta| = {magnitude:e}")]
    Pole { factor: String, magnitude: f64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
