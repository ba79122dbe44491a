use thiserror::Error;

/// Errors raised by graph ingestion and the polytope pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    /// An operation was called outside its contract, or an internal
    /// consistency check failed. The message names the offending object.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("enumeration budget exceeded: {what} needs more than {limit}")]
    Budget { what: String, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("pole: linear form of tube {tube} vanishes at the evaluation point")]
    Pole { tube: String },

    #[error("point is not on the hyperplane (coordinate sum {sum}, expected 1)")]
    OffHyperplane { sum: String },

    #[error("point is not interior: facet form of tube {tube} evaluates to {value}")]
    NotInterior { tube: String, value: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
