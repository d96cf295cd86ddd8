use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed arguments: dimension mismatch, points outside a box,
    /// incomparable pairs where the hypotheses require comparability.
    #[error("input error: {0}")]
    Input(String),

    /// Inadmissible constants, unknown builtin names, bad solver settings.
    #[error("config error: {0}")]
    Config(String),

    /// The sampled constraint set admits no admissible constants.
    #[error("not certifiable from samples: {0}")]
    Estimation(String),

    #[error("iteration diverged at step {step}: step distance {distance:e} exceeds cutoff")]
    Divergence { step: usize, distance: f64 },

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

pub(crate) fn config(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}
