use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid weight: {0}")]
    InvalidWeight(String),

    #[error("singular Vandermonde matrix: conformal weight {0} is repeated")]
    Singular(String),

    #[error("no eigenvalue bound: {0}")]
    NoBound(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A computed quantity disagrees with its exact prediction.
    #[error("integrity error: {0}")]
    Integrity(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("linear algebra failure: {0}")]
    Numerical(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}
