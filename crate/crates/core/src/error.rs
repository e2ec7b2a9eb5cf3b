use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:e} below -{tolerance:e}")]
    NotPsd { min_eigenvalue: f64, tolerance: f64 },

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("{what}: requested {requested} exceeds budget {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("constraint violated: {0}")]
    ConstraintViolated(String),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e}){}",
        seed.map(|s| format!(", matrix seed {s}")).unwrap_or_default())]
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
        seed: Option<u64>,
    },

    #[error("constrained sampler failed for seed {seed}: {reason}")]
    SamplerFailed { seed: u64, reason: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Attaches a seed to eigensolver failures so the offending input can be regenerated.
    pub fn with_seed(self, seed: u64) -> Self {
        match self {
            Error::NoConvergence {
                sweeps, off_norm, ..
            } => Error::NoConvergence {
                sweeps,
                off_norm,
                seed: Some(seed),
            },
            other => other,
        }
    }
}
