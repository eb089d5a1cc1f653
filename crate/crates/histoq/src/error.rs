use std::fmt;

/// Failure of a CLI run. The variant fixes the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed model file, invariant violations
    /// in the inputs. Exit code 2.
    Config(String),
    /// A computation did not converge or hit a singular conditioning.
    /// Exit code 3.
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    /// Prefixes the message with where it happened.
    pub fn context(self, at: &str) -> Self {
        match self {
            CliError::Config(m) => CliError::Config(format!("{at}: {m}")),
            CliError::Numerical(m) => CliError::Numerical(format!("{at}: {m}")),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "invalid configuration: {m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<histoq_core::Error> for CliError {
    fn from(e: histoq_core::Error) -> Self {
        use histoq_core::Error as E;
        match e {
            E::QuadratureDiverged { .. } | E::ZeroConditioning { .. } | E::ZeroBranch { .. } => {
                CliError::Numerical(e.to_string())
            }
            _ => CliError::Config(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
