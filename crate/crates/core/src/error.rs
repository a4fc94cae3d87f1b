use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    Grid(String),
    #[error("invalid mesh specification: {0}")]
    Mesh(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0} is not defined at X = {1}")]
    Singular(&'static str, f64),
    #[error("solver diverged at tau = {tau}: {reason}")]
    Diverged { tau: f64, reason: String },
    #[error("no convergence after {steps} steps (tau = {tau}, residual = {residual:e})")]
    NotConverged { steps: usize, tau: f64, residual: f64 },
    #[error("fit failed: {0}")]
    Fit(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
