use thiserror::Error;

/// Failures raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("quantity diverges: {0}")]
    Divergence(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("unphysical result: {0}")]
    Unphysical(String),
    #[error("not supported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for errors caused by bad input rather than numerical trouble.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_) | Error::Domain(_) | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
