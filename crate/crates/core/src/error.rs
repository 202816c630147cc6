use std::path::PathBuf;

use crate::beamformers::SolveReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} relative to norm)")]
    NotHermitian { asymmetry: f64 },

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    EigNoConvergence { sweeps: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("method requires {expected}, got {got}")]
    WrongDimension { expected: &'static str, got: String },

    #[error("problem too large for exhaustive check: {0}")]
    TooLarge(String),

    #[error("phase solver failed to reach tolerance from every start (best residual {:.3e})", .best.residual)]
    NoConvergence { best: Box<SolveReport> },

    #[error("invalid value: {0}")]
    InvalidInput(String),

    #[error("line {line}: key `{key}`: {message}")]
    Parse {
        key: String,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
