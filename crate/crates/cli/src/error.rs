use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Numerical(#[from] chainrate::Error),
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(e) => match e {
                chainrate::Error::Config(_) | chainrate::Error::Argument(_) | chainrate::Error::Resource(_) => 2,
                _ => 3,
            },
            CliError::Parse(_) | CliError::Io(_) => 1,
        }
    }
}
