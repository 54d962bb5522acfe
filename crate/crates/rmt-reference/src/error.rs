use thiserror::Error;

use fredholm::FredholmError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RmtError {
    #[error("argument {0} outside the supported range [-40, 40]")]
    AiryDomain(f64),
    #[error("tolerance not reached: achieved {achieved:.3e}, requested {requested:.1e}")]
    Tolerance { achieved: f64, requested: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Fredholm(#[from] FredholmError),
}
