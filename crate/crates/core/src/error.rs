use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// E-UNKNOWN-ID
    #[error("unknown element id `{0}`")]
    UnknownId(String),

    #[error("unknown {what} `{token}`")]
    UnknownToken { what: &'static str, token: String },

    #[error("rule config line {line}: {message}")]
    RuleConfig { line: usize, message: String },

    #[error("invalid model JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("model import: {0}")]
    Import(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
