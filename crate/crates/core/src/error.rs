use thiserror::Error;

/// Errors raised by the library and the command-line front end.
///
/// Internal consistency failures (two independent algorithms disagreeing)
/// are not represented here; they panic, and the CLI reports them with
/// exit code 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("generator gave up: {0}")]
    Generator(String),
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI uses for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::UnknownIdentifier(_) | Error::Argument(_) | Error::Json(_) => 2,
            Error::Resource(_) | Error::Generator(_) => 3,
        }
    }
}
