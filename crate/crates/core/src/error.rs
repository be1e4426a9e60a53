use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("exterior power degree {r} exceeds rank {n}")]
    ExteriorDegree { r: usize, n: usize },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unsupported prime {p}: {reason}")]
    UnsupportedPrime { p: u64, reason: String },

    #[error("malformed complex: composite of consecutive maps is nonzero")]
    MalformedComplex,

    #[error("invalid Z/p action: {0}")]
    InvalidAction(String),

    #[error("b0 lies in (1 - t)B: the extension splits as a cyclotomic summand plus a trivial one")]
    DecomposableExtension,

    #[error("unclassifiable lattice: {0}")]
    Unclassifiable(String),

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
