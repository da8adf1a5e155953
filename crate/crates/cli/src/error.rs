use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    ConfigFile { path: PathBuf, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] pdm_slater::Error),

    #[error("at x = {x}: {source}")]
    AtPoint { x: f64, source: pdm_slater::Error },

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn at(x: f64) -> impl FnOnce(pdm_slater::Error) -> CliError {
        move |source| CliError::AtPoint { x, source }
    }
}
