use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {index} has a non-finite coordinate")]
    NonFinite { index: usize },

    #[error("vertex list is not a convex polygon")]
    NotConvex,

    #[error("invalid functional: {0}")]
    InvalidFunctional(String),

    #[error("invalid family entry `{label}`: {reason}")]
    InvalidEntry { label: String, reason: String },

    #[error("family entry `{0}` has no color")]
    Uncolored(String),

    #[error("sign vectors are not comparable: {0}")]
    Incomparable(String),

    #[error("line does not meet entry {index}")]
    EmptyCrossing { index: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a rectangle: {0}")]
    NotRectangle(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("generation budget exhausted after {attempts} attempts")]
    GenerationBudget { attempts: usize },

    #[error("document error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("document validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
