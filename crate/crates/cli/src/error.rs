use std::path::Path;

use thiserror::Error;

/// Failures of a CLI run. [`CliError::exit_code`] maps usage and parse
/// problems to 2 and everything else to 1.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Compute(adiamis_core::Error),
    #[error("check failed: {0}")]
    Check(String),
}

impl CliError {
    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Parse(_) => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        use adiamis_core::Error as E;
        match self {
            Self::Usage(_) => "usage",
            Self::Parse(_) => "parse",
            Self::Io { .. } => "io",
            Self::Check(_) => "check-failed",
            Self::Compute(e) => match e {
                E::BasisCap { .. } => "basis-cap",
                E::NormDrift { .. } => "norm-drift",
                E::KrylovNotConverged(_) => "krylov-not-converged",
                E::EigenNotConverged(_) => "eigen-not-converged",
                E::DimensionLimit { .. } => "dimension-limit",
                E::TooFewPoints(_) | E::NonPositiveGap(_) => "fit",
                _ => "invalid-input",
            },
        }
    }
}

impl From<adiamis_core::Error> for CliError {
    fn from(e: adiamis_core::Error) -> Self {
        use adiamis_core::Error as E;
        match e {
            E::VertexCount(_)
            | E::Probability(_)
            | E::TooManyEdges { .. }
            | E::SpiderLegs(_)
            | E::InvalidParameter(_) => Self::Usage(e.to_string()),
            other => Self::Compute(other),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Io {
            path: "csv output".into(),
            source: std::io::Error::other(e),
        }
    }
}
