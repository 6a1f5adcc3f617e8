use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("path-loss exponent {0} is not above 2; the interference closed forms need sin(2π/α) > 0")]
    AlphaTooSmall(f64),

    #[error("bearing between coincident points is undefined")]
    CoincidentPoints,

    #[error("path loss is singular at zero distance")]
    SingularPathLoss,

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error:e} after {intervals} subintervals")]
    Quadrature {
        estimate: f64,
        error: f64,
        intervals: usize,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed JSON config: {0}")]
    Json(#[from] serde_json::Error),
}
