use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("grade error: {0}")]
    Grade(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("cohomology window too narrow: {0}")]
    Window(String),
    #[error("integrity check failed: {0}")]
    Integrity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
