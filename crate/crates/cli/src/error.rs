use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, unreadable files or inputs the engine rejects.
    #[error("{0}")]
    Input(String),
    /// A scenario computed something other than its expected value.
    #[error("verification failed for {0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Mismatch(_) => 1,
        }
    }
}

impl From<edgereg_core::Error> for CliError {
    fn from(e: edgereg_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
