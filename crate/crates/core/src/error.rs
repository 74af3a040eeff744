use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid simplex {vertices:?}: {reason}")]
    InvalidSimplex { vertices: Vec<u32>, reason: String },

    #[error("dimension {dim} out of range (allowed {min}..={max})")]
    DimensionOutOfRange { dim: isize, min: isize, max: isize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range for basis of size {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("{dim}-simplex {face} has more than two cofaces; complex is not a pseudomanifold in that dimension")]
    NotPseudomanifold { dim: usize, face: usize },

    #[error("missing coordinates for vertex {0}")]
    MissingCoordinates(u32),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("undecided: {0}")]
    Undecided(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
