use thiserror::Error;

use zipzeta::btgl::BtError;
use zipzeta::fforacle::{FieldError, OracleError};
use zipzeta::weyl::WeylError;
use zipzeta::zetafn::ZetaError;
use zipzeta::zipstrata::ZipError;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const IO: i32 = 1;
    pub const INVALID: i32 = 2;
    pub const MISMATCH: i32 = 3;
    pub const LIMIT: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{origin}: at `{path}`: {message}")]
    Parse { origin: String, path: String, message: String },
    #[error("unsupported schema version {0} (expected 1)")]
    Schema(u32),
    #[error("invalid configuration: {0}")]
    Validation(String),
    #[error(transparent)]
    Zip(#[from] ZipError),
    #[error(transparent)]
    Bt(#[from] BtError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub(crate) fn with_prefix(self, prefix: &str) -> CliError {
        match self {
            CliError::Parse { origin, path, message } => {
                let path = if path == "." { prefix.to_string() } else { format!("{prefix}.{path}") };
                CliError::Parse { origin, path: path.replace(".[", "["), message }
            }
            other => other,
        }
    }

    pub fn exit_code(&self) -> i32 {
        let weyl_limit = |e: &WeylError| matches!(e, WeylError::GroupTooLarge(_));
        match self {
            CliError::Io { .. } => exit::IO,
            CliError::Oracle(OracleError::MismatchDetected { .. }) => exit::MISMATCH,
            CliError::Oracle(OracleError::SearchSpaceTooLarge { .. })
            | CliError::Oracle(OracleError::Field(FieldError::FieldTooLarge { .. })) => exit::LIMIT,
            CliError::Zip(ZipError::Weyl(e)) | CliError::Bt(BtError::Zip(ZipError::Weyl(e))) if weyl_limit(e) => {
                exit::LIMIT
            }
            _ => exit::INVALID,
        }
    }
}
