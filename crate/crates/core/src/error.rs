use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical procedure failed to reach a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// No candidate point set reached the requested conditioning.
    #[error("no well-conditioned point set after {attempts} attempts (best condition number {best_condition:.3e})")]
    Conditioning {
        attempts: usize,
        best_condition: f64,
    },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}
