use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("word does not have the alternating positive a/b shape: {0}")]
    Shape(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("enumeration of {requested} items exceeds the cap (degree {degree} > {cap})")]
    Resource {
        degree: usize,
        cap: usize,
        requested: String,
    },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("scalar kind mismatch: {0}")]
    KindMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("no invertible sample after {attempts} attempts")]
    ResampleExhausted { attempts: usize },

    #[error("certification failed: {0}")]
    CertificationFailure(String),

    #[error("invalid modulus {0}: must be an odd prime below 2^63")]
    InvalidPrime(u64),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
