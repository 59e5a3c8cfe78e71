use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The guided mode is evanescent: `omega` does not exceed the cutoff `Omega`.
    #[error("frequency {omega} eV is at or below the mode cutoff {cutoff} eV")]
    Cutoff { omega: f64, cutoff: f64 },

    /// `M22` vanished exactly, so the scattering amplitudes are infinite.
    #[error("exact spectral singularity: M22 = 0")]
    ExactSingularity,

    #[error("numerically degenerate: {0}")]
    Degenerate(String),

    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
