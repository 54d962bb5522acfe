use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("horizon must be positive and finite, got {0}")]
    NonPositiveHorizon(f64),
    #[error("t_end = {t_end} lies beyond the clock horizon {horizon}")]
    BeyondHorizon { t_end: f64, horizon: f64 },
    #[error("t_end = {t_end} is before the current time {now}")]
    BackwardsInTime { t_end: f64, now: f64 },
    #[error("coupled systems are at different times ({0} vs {1})")]
    TimeMismatch(f64, f64),
    #[error("label {0} is not instantiated in this system")]
    MissingLabel(i64),
    #[error("tracked label {label} is outside the instantiated range {lo}..={hi}")]
    TrackedOutOfRange { label: i64, lo: i64, hi: i64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("alpha = {0} is outside the shock regime (0, 1/2)")]
    AlphaOutOfShockRegime(f64),
}
