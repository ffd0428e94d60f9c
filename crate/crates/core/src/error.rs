use thiserror::Error;

/// Errors shared across the numerical modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate partition: {0}")]
    DegeneratePartition(String),

    #[error("signal has no detectable jump (flat within tolerance)")]
    NoJump,

    #[error("edge detection failed: {0}")]
    DetectionFailed(String),

    #[error("degenerate signal: {0}")]
    DegenerateSignal(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("singular Jacobian in Newton iteration at iteration {0}")]
    SingularJacobian(usize),

    #[error("{stage} stage failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn in_stage(self, stage: &'static str) -> Error {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
