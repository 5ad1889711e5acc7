use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config error at `{path}`: {message}")]
    Schema { path: String, message: String },
    #[error("invalid config value at `{path}`: {message}")]
    Invalid { path: String, message: String },
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
}

#[derive(Debug, Error)]
pub enum EmitError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
