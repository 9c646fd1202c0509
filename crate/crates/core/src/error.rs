use thiserror::Error;

/// Errors raised by the polynomial and element layers.
///
/// Partiality of `⊕` and of checked subtraction is *not* an error; those are
/// reported through [`crate::OplusOutcome`] and `Option` respectively.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("truncation parameter must satisfy n >= 2, got {0}")]
    InvalidN(usize),

    #[error("operands belong to different algebras (n = {left} vs n = {right})")]
    ConfigMismatch { left: usize, right: usize },

    #[error("expected {expected} coefficients (degrees 1..n-1), got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("coefficients {coeffs} violate the sign rule: first nonzero coefficient must be positive")]
    SignRule { coeffs: String },

    #[error("monomial degree {degree} outside 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("{element} is not a member: m must be >= 0 when p = q = 0")]
    Membership { element: String },

    #[error("{a} is not below {b}; no difference exists")]
    NotBelow { a: String, b: String },

    #[error("power exponent must be at least {min}, got {got}")]
    Exponent { min: u64, got: u64 },

    #[error("window bounds must be non-negative (W = {coeff_bound}, M = {m_bound})")]
    DegenerateWindow { coeff_bound: i64, m_bound: i64 },

    #[error("window holds {size} elements, above the cap of {cap}")]
    WindowTooLarge { size: String, cap: u128 },

    #[error("unknown mutation tag {0:?}")]
    UnknownMutation(String),

    #[error("closure failure: {0}")]
    Closure(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

/// Errors raised by the axiom harness. Axiom violations are not errors; they
/// are recorded in [`crate::harness::CheckReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),

    #[error("unknown axiom id {0:?}")]
    UnknownAxiom(String),

    #[error("{axiom} needs a polynomial-backed instance, {instance} is not one")]
    Unsupported { axiom: String, instance: String },

    #[error("exhaustive {axiom} would visit {tuples} tuples, above the cap of {cap}")]
    TooManyTuples { axiom: String, tuples: String, cap: u128 },
}
