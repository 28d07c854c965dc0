//! Crate-wide error type.
//!
//! Everything user-triggerable (bad files, wrong degrees, non-cocycles,
//! resource limits) goes through [`Error`]; internal invariant breakage
//! panics instead.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("generator `{name}` has even degree {degree}; only odd-degree generators are supported")]
    UnsupportedDegree { name: String, degree: usize },

    #[error("too many generators: {count} (limit {limit})")]
    TooManyGenerators { count: usize, limit: usize },

    #[error("duplicate generator name `{name}`")]
    DuplicateGenerator { name: String },

    #[error("invalid generator name `{name}`")]
    BadGeneratorName { name: String },

    #[error("unknown generator `{name}`")]
    UnknownGenerator { name: String },

    #[error("model validation failed:\n{report}")]
    InvalidModel { report: String },

    #[error("element belongs to a different model than `{expected}`")]
    ModelMismatch { expected: String },

    #[error("expected a homogeneous element of degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: String },

    #[error("expected a homogeneous element, found {found}")]
    NotHomogeneous { found: String },

    #[error("element is not a cocycle: d gives {residual}")]
    NotACocycle { residual: String },

    #[error("element {element} has no primitive (it is not exact)")]
    NoPrimitive { element: String },

    #[error("jet level {requested} exceeds the ambient truncation level {level}")]
    LevelRange { requested: usize, level: usize },

    #[error("scale change by zero is not invertible")]
    ZeroScale,

    #[error("direction degree {k} is even: the formal complex needs t of odd degree; even-degree directions support levels 0 and 1 only, via the coefficient-sequence formulation")]
    EvenDirection { k: usize },

    #[error("level INFINITY cannot be reduced to a finite bound here: {reason}")]
    NoFiniteReduction { reason: String },

    #[error("resource guard: {what} needs {needed}, limit is {limit}")]
    Resource { what: String, needed: usize, limit: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("expression error: {msg}")]
    Expr { msg: String },

    #[error("unknown builtin model `{name}`; available: {available}")]
    UnknownBuiltin { name: String, available: String },

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
