use thiserror::Error;

/// Errors produced by the numerical core.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The shooting bracket could not be established inside the amplitude bounds.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// The requested residual target cannot be met on the given grid.
    #[error("resolution too coarse: residual {achieved:.3e} exceeds target {target:.3e} at n = {n}")]
    ResolutionTooCoarse {
        n: usize,
        target: f64,
        achieved: f64,
    },

    /// A tridiagonal system turned out singular.
    #[error("linear solve failure: {0}")]
    SolveFailure(String),

    /// Two fields that must share a grid do not.
    #[error("fields live on different grids")]
    GridMismatch,
}

pub type Result<T> = std::result::Result<T, CoreError>;
