use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// The observed information is not numerically positive definite.
    #[error("singular observed information for candidate {candidate}")]
    SingularInformation { candidate: String },

    #[error("quasi-log-likelihood is not finite at the initial value ({0})")]
    Initialization(String),

    #[error("no valid candidate model remains for selection")]
    NoValidCandidate,

    #[error("exhaustive search over {0} covariates would need 2^{0} - 1 candidates (limit is 20 covariates)")]
    TooManyCandidates(usize),

    #[error("quadrature supports at most 3 parameters, got {0}")]
    UnsupportedDimension(usize),

    #[error("invalid fit: {0}")]
    InvalidFit(String),

    #[error("estimate lies outside the prior support")]
    PriorSupport,

    #[error("scenario {0} is misspecified; a reference parameter must be supplied")]
    MissingReference(String),

    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },

    #[error("missing column `{0}`")]
    Schema(String),

    #[error("cannot parse `{value}` at row {row}, column `{column}`")]
    Parse {
        row: usize,
        column: String,
        value: String,
    },

    #[error("column `{0}` has zero sample standard deviation")]
    DegenerateColumn(String),

    #[error("insufficient history: need at least {needed} rows, have {available}")]
    InsufficientHistory { needed: usize, available: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
