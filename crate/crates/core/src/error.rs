use thiserror::Error;

/// Errors raised by the library. Each one is an input error at the command
/// line.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("a graded basis needs at least one vector (got dim_even={dim_even}, dim_odd={dim_odd})")]
    EmptyBasis { dim_even: usize, dim_odd: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("grading violation: e{i} e{j} has a component on e{k} of the wrong degree")]
    GradingViolation { i: usize, j: usize, k: usize },
    #[error("element has {found} coefficients, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("argument `{0}` is not homogeneous")]
    NonHomogeneous(&'static str),
    #[error("the two products live on different graded bases")]
    BasisMismatch,
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
