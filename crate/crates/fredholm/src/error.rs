use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FredholmError {
    #[error("determinant did not settle under refinement: estimate {estimate:.3e} above tolerance {tolerance:.1e}")]
    NotConverged { value: f64, estimate: f64, tolerance: f64 },
    #[error("kernel produced a non-finite entry")]
    NonFinite,
    #[error("contour too close to a pole: separation {separation:.3e} below {minimum:.3e}")]
    ContourTooClose { separation: f64, minimum: f64 },
    #[error("ill-conditioned resolvent: condition number {condition:.3e} exceeds {threshold:.1e}")]
    IllConditioned { condition: f64, threshold: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
