use thiserror::Error;

/// Errors raised by the library. Every variant carries a stable
/// machine-readable code (see [`Error::code`]) used by the CLI and the C ABI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({left} vs {right})")]
    FieldMismatch { left: String, right: String },
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("elements do not belong to the same algebra: {0}")]
    AlgebraMismatch(String),
    #[error("not a natural basis: {0}")]
    NotANaturalBasis(String),
    #[error("the zero vector has no natural-vector status")]
    ZeroVector,
    #[error("family members {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("family member {0} is not a natural vector")]
    NotNaturalVector(usize),
    #[error("no orthogonal completion exists in characteristic 2")]
    CharTwoUnsupported,
    #[error("the algebra has a nonzero annihilator")]
    Degenerate,
    #[error("the algebra is not perfect (structure matrix is singular)")]
    NotPerfect,
    #[error("dimension {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("structure matrix is not square: {0}")]
    NonSquareMatrix(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("witness failed re-verification: {0}")]
    WitnessRejected(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::NonPrimeModulus(_) => "non_prime_modulus",
            Error::ShapeMismatch(_) => "shape_mismatch",
            Error::AlgebraMismatch(_) => "algebra_mismatch",
            Error::NotANaturalBasis(_) => "not_a_natural_basis",
            Error::ZeroVector => "zero_vector",
            Error::NotOrthogonal(..) => "not_orthogonal",
            Error::NotNaturalVector(_) => "not_natural_vector",
            Error::CharTwoUnsupported => "char_two_unsupported",
            Error::Degenerate => "degenerate",
            Error::NotPerfect => "not_perfect",
            Error::DimensionTooLarge { .. } => "dimension_too_large",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::Parse { .. } => "parse_error",
            Error::NonSquareMatrix(_) => "non_square_matrix",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Io { .. } => "io_error",
            Error::WitnessRejected(_) => "witness_rejected",
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
