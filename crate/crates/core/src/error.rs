use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcatError {
    /// Malformed input tables: wrong sizes, dangling indices, unknown names.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("endpoint mismatch: {0}")]
    Endpoint(String),
    #[error("the quantaloid carries no involution")]
    MissingInvolution,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("enumeration bound exceeded: {needed} candidates, bound {bound}")]
    BoundExceeded { needed: u128, bound: u128 },
    #[error("space is not finitely typed: point {0} has infinite self-distance")]
    NotFinitelyTyped(String),
    #[error("horizon must be at least 2, got {0}")]
    Horizon(usize),
    #[error("sequence is not Cauchy: {0}")]
    NotCauchy(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("schema error at {path}: {msg}")]
    Schema { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, QcatError>;

pub(crate) fn structural(msg: impl Into<String>) -> QcatError {
    QcatError::Structural(msg.into())
}
