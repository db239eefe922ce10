use thiserror::Error;

/// Errors reported by the quaternion algebra and its file formats.
///
/// Every index carried by an error is 1-based.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by the zero quaternion")]
    DivisionByZero,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("matrix is singular")]
    Singular,

    #[error("operation is undefined for the zero matrix")]
    ZeroMatrix,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Row and column determinants enumerate all n! permutations.
    #[error("determinant of order {order} exceeds the enumeration cap of {cap}")]
    SizeCap { order: usize, cap: usize },

    #[error("Newton-Schulz iteration did not converge after {iterations} iterations; Penrose residuals {residuals:?}")]
    MaxIterations {
        iterations: usize,
        residuals: [f64; 4],
    },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub(crate) fn dims(message: impl Into<String>) -> Self {
        Error::DimensionMismatch(message.into())
    }
}
