use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("input error: {0}")]
    Input(String),
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
    /// A mathematical check failed; `witness` names the offending basis data.
    #[error("{check} failed at {witness}")]
    Check { check: String, witness: String },
    #[error("not normal: {0}")]
    NotNormal(String),
    #[error("freeness failure: {0}")]
    Freeness(String),
    #[error("no Frobenius system found ({0}); supply beta")]
    NoFrobeniusSystem(String),
    #[error("phi degenerate: {0}")]
    DegenerateForm(String),
    #[error("twist mismatch: {0}")]
    TwistMismatch(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub fn check(check: impl Into<String>, witness: impl Into<String>) -> Error {
        Error::Check { check: check.into(), witness: witness.into() }
    }

    /// Errors caused by malformed input rather than a failed mathematical check.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Shape(_) | Error::Input(_) | Error::UnknownInstance(_))
    }
}
