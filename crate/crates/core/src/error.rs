use std::fmt;

/// Errors produced by polynomial arithmetic, linear algebra and the
/// geometric checks built on top of them.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two values from different variable contexts were combined.
    ContextMismatch,
    /// A coordinate variable occurring in the polynomial has no image.
    MissingSubstitution(String),
    /// A substitution key is not a coordinate variable of the context.
    NotACoordinate(String),
    /// A substitution key was given more than once.
    DuplicateSubstitution(String),
    /// Row/column or ambient-dimension mismatch.
    DimensionMismatch { expected: usize, found: usize },
    /// Matrix inversion failed; carries the vanishing determinant.
    NotInvertible { determinant: String },
    /// An operation required a homogeneous polynomial.
    NotHomogeneous(String),
    /// A projective point must have at least one nonzero coordinate.
    ZeroVector,
    /// The two spanning points of a line must be projectively distinct.
    DegenerateLine,
    /// A line was expected to be invariant as a set but is not.
    LineNotInvariant(String),
    /// The vanishing forms of a stored line do not cut out a line.
    NotALine(String),
    /// A matrix does not have the shape required by the operation.
    BadMatrixShape(String),
    /// The surface carries no plane curve-image configuration.
    MissingConfiguration(String),
    /// Embedded data failed a construction invariant.
    InvalidModel(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "values belong to different variable contexts"),
            Error::MissingSubstitution(v) => {
                write!(f, "no substitution image for coordinate variable {v}")
            }
            Error::NotACoordinate(v) => write!(f, "{v} is not a coordinate variable"),
            Error::DuplicateSubstitution(v) => write!(f, "duplicate substitution image for {v}"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotInvertible { determinant } => {
                write!(f, "matrix is not invertible (determinant = {determinant})")
            }
            Error::NotHomogeneous(p) => write!(f, "polynomial is not homogeneous: {p}"),
            Error::ZeroVector => write!(f, "projective point has all coordinates zero"),
            Error::DegenerateLine => write!(f, "spanning points of a line must be distinct"),
            Error::LineNotInvariant(l) => write!(f, "line is not invariant as a set: {l}"),
            Error::NotALine(l) => write!(f, "vanishing forms do not cut out a line: {l}"),
            Error::BadMatrixShape(m) => write!(f, "{m}"),
            Error::MissingConfiguration(s) => {
                write!(f, "surface {s} carries no plane configuration data")
            }
            Error::InvalidModel(m) => write!(f, "invalid model data: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
