use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("elements belong to different presentations")]
    PresentationMismatch,

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("tensor position {position} out of range 1..={arity}")]
    PositionOutOfRange { position: usize, arity: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("resource limit exceeded: {what} has dimension {dimension} (cap {cap})")]
    ResourceLimit {
        what: String,
        dimension: u128,
        cap: u128,
    },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("no free action: {0}")]
    NoFreeAction(String),

    #[error("invalid certificate file: {0}")]
    Schema(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
