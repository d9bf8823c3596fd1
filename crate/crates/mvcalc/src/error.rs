use std::fmt;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Dimension outside the supported 1..=8 range.
    DimOutOfRange { dim: usize },
    /// Two values from algebras of different dimension were combined.
    DimMismatch { left: usize, right: usize },
    /// A grade outside 0..=dim was requested.
    GradeOutOfRange { grade: usize, dim: usize },
    /// A homogeneous multivector of the given grade was required.
    NotHomogeneous { expected: usize },
    /// Basis matrix is numerically singular.
    SingularBasis { abs_det: f64 },
    /// Text could not be parsed; `offset` is a byte offset into the input.
    Parse { offset: usize, message: String },
    /// A homogeneous output grade was required but the function is mixed-grade.
    MixedGrade { context: &'static str },
    /// The direction multivector must be nonzero.
    ZeroDirection,
    /// A remainder profile needs at least three steps.
    InsufficientSteps { count: usize },
    /// Verification rule name not in the registry.
    UnknownRule { name: String },
}

impl Error {
    pub fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimOutOfRange { dim } => {
                write!(f, "dimension {dim} out of range (expected 1..=8)")
            }
            Error::DimMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::GradeOutOfRange { grade, dim } => {
                write!(f, "grade {grade} out of range for dimension {dim}")
            }
            Error::NotHomogeneous { expected } => {
                write!(f, "multivector is not homogeneous of grade {expected}")
            }
            Error::SingularBasis { abs_det } => {
                write!(f, "basis matrix is singular (|det| = {abs_det:e})")
            }
            Error::Parse { offset, message } => {
                write!(f, "parse error at offset {offset}: {message}")
            }
            Error::MixedGrade { context } => {
                write!(f, "mixed-grade output where a homogeneous grade is required ({context})")
            }
            Error::ZeroDirection => write!(f, "direction multivector is zero"),
            Error::InsufficientSteps { count } => {
                write!(f, "remainder profile needs at least 3 steps (got {count})")
            }
            Error::UnknownRule { name } => write!(f, "unknown verification rule `{name}`"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
