//! Command-line front end for `zetadist-core`: function evaluation,
//! distribution tables and samples, and the verification scans, written as
//! JSON or CSV.

pub mod cli;
pub mod config;
pub mod output;

pub use cli::run;

/// Exit status of a successful run.
pub const EXIT_OK: u8 = 0;
/// A selected check did not pass.
pub const EXIT_CHECK_FAILED: u8 = 1;
/// Input rejected: outside the supported region, at a pole, not a valid
/// distribution, or malformed arguments.
pub const EXIT_REJECTED: u8 = 2;
/// A series or quadrature did not converge.
pub const EXIT_NONCONVERGENCE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] zetadist_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(zetadist_core::Error::NonConvergence { .. }) => EXIT_NONCONVERGENCE,
            CliError::Core(_) | CliError::Usage(_) => EXIT_REJECTED,
            CliError::Io(_) => EXIT_CHECK_FAILED,
        }
    }

    /// Short machine-readable name of the failure.
    pub fn tag(&self) -> String {
        use zetadist_core::Error as E;
        match self {
            CliError::Core(E::Pole(_)) => "Pole".into(),
            CliError::Core(E::Region(_)) => "Region".into(),
            CliError::Core(E::Domain(_)) => "Domain".into(),
            CliError::Core(E::NonFinite(_)) => "NonFinite".into(),
            CliError::Core(E::NonConvergence { .. }) => "NonConvergence".into(),
            CliError::Core(E::InvalidDistribution(r)) => r.to_string(),
            CliError::Usage(_) => "Usage".into(),
            CliError::Io(_) => "Io".into(),
        }
    }
}
