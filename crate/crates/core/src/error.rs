use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("expansion too shallow: {0}")]
    TooShallow(String),
    #[error("insufficient overlap: {0}")]
    InsufficientOverlap(String),
    #[error("aliasing guard violated: {0}")]
    Aliasing(String),
}

impl Error {
    /// True for failures of the numerics rather than of the caller's input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::DegenerateFit(_) | Error::TooShallow(_) | Error::InsufficientOverlap(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}

pub(crate) fn ensure_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        invalid(format!("{name} must be finite, got {v}"))
    }
}
