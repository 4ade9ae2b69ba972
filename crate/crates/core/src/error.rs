use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cohomological index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: usize },
    #[error("graded pieces are infinite-dimensional over the field: {0}")]
    InfiniteDimension(String),
    #[error("weight vector does not reproduce the initial ideal: {0}")]
    WeightVectorMismatch(String),
    #[error("no weight vector found within the search budget (total weight <= {0})")]
    WeightSearchExhausted(u64),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared variable `{name}` at {line}:{column}")]
    UndeclaredVariable {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("theorem violation: square-free initial ideal with fiber-full family but unequal local cohomology tables\n{instance}")]
    TheoremViolation { instance: String },
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

impl AlgebraError {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            AlgebraError::InvalidGrading(_) => "invalid-grading",
            AlgebraError::InvalidField(_) => "invalid-field",
            AlgebraError::RingMismatch(_) => "ring-mismatch",
            AlgebraError::OrderMismatch(_) => "order-mismatch",
            AlgebraError::InvalidArgument(_) => "invalid-argument",
            AlgebraError::IndexOutOfRange { .. } => "index-out-of-range",
            AlgebraError::InfiniteDimension(_) => "infinite-dimension",
            AlgebraError::WeightVectorMismatch(_) => "weight-vector-mismatch",
            AlgebraError::WeightSearchExhausted(_) => "weight-search-exhausted",
            AlgebraError::Parse { .. } => "syntax-error",
            AlgebraError::UndeclaredVariable { .. } => "undeclared-variable",
            AlgebraError::TheoremViolation { .. } => "theorem-violation",
        }
    }
}
