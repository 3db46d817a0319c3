use thiserror::Error;

/// Process exit codes. These values are a stable contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Invalid = 1,
    Inconclusive = 2,
    BudgetExceeded = 3,
    VerificationFailed = 4,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("{0}")]
    Budget(conifold::Error),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Core(conifold::Error),
}

impl CliError {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        match self {
            Self::Budget(_) => ExitStatus::BudgetExceeded,
            _ => ExitStatus::Invalid,
        }
    }
}

impl From<conifold::Error> for CliError {
    fn from(e: conifold::Error) -> Self {
        use conifold::Error as E;
        match e {
            E::BudgetExceeded { .. } => Self::Budget(e),
            E::Overflow | E::Singular => Self::Core(e),
            other => Self::Validation(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the cause.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        Self::parse(e.line(), e.column(), message)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
