use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Refused(String),
    #[error(transparent)]
    Engine(#[from] particle_engine::EngineError),
    #[error(transparent)]
    Fredholm(#[from] fredholm::FredholmError),
    #[error(transparent)]
    Rmt(#[from] rmt_reference::RmtError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("plot: {0}")]
    Plot(String),
}

pub type Result<T> = std::result::Result<T, ExperimentError>;
