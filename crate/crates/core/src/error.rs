use thiserror::Error;

/// Errors raised by the laboratory. Unstable time integration is not an
/// error: it is reported as a run status.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("non-finite value encountered in {0}")]
    NonFinite(&'static str),
    #[error("invalid parameter `{name}`: {detail}")]
    InvalidParameter { name: String, detail: String },
    #[error("resolution rule violated: {0}")]
    Resolution(String),
    #[error("ill-defined norm request: {0}")]
    IllDefinedNorm(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("profile verification failed: {0}")]
    ProfileVerification(String),
    #[error("power-law fit: {0}")]
    Fit(String),
    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),
    #[error("malformed file {path}: {detail}")]
    Format { path: String, detail: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by the caller's input rather than by the program.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Config(_)
                | Error::InvalidParameter { .. }
                | Error::Resolution(_)
                | Error::Format { .. }
                | Error::IllDefinedNorm(_)
                | Error::GridMismatch(_)
        )
    }

    pub(crate) fn param(name: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::InvalidParameter { name: name.into(), detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
