use eit_core::EitError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("unknown config keys: {}", .0.join(", "))]
    UnknownKeys(Vec<String>),

    #[error("invalid value for `{field}` = {value}: {bound}")]
    OutOfRange {
        field: &'static str,
        value: String,
        bound: &'static str,
    },

    #[error(transparent)]
    Numeric(#[from] EitError),

    #[error("{} row(s) hit a numerical singularity", .0.len())]
    RowFailures(Vec<String>),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// Process exit status: 1 for bad input, 2 for numerical singularities.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::RowFailures(_) => 2,
            CliError::Numeric(EitError::InvalidParameter { .. } | EitError::UnknownCase(_)) => 1,
            CliError::Numeric(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
