use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("group construction: {0}")]
    Group(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unbound symbol `{0}`")]
    UnboundSymbol(String),
    #[error("subgroup: {0}")]
    Subgroup(String),
    #[error("homomorphism: {0}")]
    Homomorphism(String),
    #[error("spec document: {0}")]
    Spec(String),
    #[error("structure check: {0}")]
    Structure(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
