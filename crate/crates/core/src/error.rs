use thiserror::Error;

/// Errors produced by the mode-level numerics.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The adaptive integrator could not make progress.
    #[error("integrator step underflow at t = {t_last} (step {h})")]
    StepUnderflow { t_last: f64, h: f64 },
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
