use thiserror::Error;

/// Errors raised by the algebra layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient ring mismatch: {0}")]
    RingMismatch(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("composition needs an inner series with zero constant term")]
    CompositionDomain,

    #[error("series is not invertible for composition: {0}")]
    Inversion(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("class is not in I^{0}")]
    NotInIdeal(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
