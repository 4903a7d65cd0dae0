use thiserror::Error;

/// Errors produced by model construction, theory evaluation and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter is outside its domain. `name` is the logical parameter
    /// name (`n`, `alpha`, `p`, `beta`, ...), which the CLI maps back to a flag.
    #[error("invalid value for `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("problem too large: {0}")]
    Size(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
