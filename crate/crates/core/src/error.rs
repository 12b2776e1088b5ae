use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different Lie presentations")]
    PresentationMismatch,
    #[error("tensor leg count mismatch: {left} vs {right}")]
    LegMismatch { left: usize, right: usize },
    #[error("operation requires {expected} legs, got {found}")]
    WrongLegCount { expected: usize, found: usize },
    #[error("invalid leg positions {0:?}")]
    InvalidPositions(Vec<usize>),
    #[error("series lead coefficient must be {expected}")]
    SeriesLead { expected: &'static str },
    #[error("truncation underflow: order {needed} requested but only {available} known")]
    TruncationUnderflow { needed: usize, available: usize },
    #[error("kappa-shifted series failed to cancel at order {order}")]
    CancellationFailure { order: usize },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
    #[error("not available: {0}")]
    Unsupported(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
