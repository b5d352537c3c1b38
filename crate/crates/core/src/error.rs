use std::fmt;

/// Errors produced by field construction, polynomial arithmetic and the
/// evaluation pipelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The requested modulus failed the primality check.
    CompositeModulus(u64),
    /// The requested modulus is outside the supported range (2, 2^62).
    ModulusOutOfRange(u64),
    /// Two operands belong to different prime fields.
    FieldMismatch { left: u64, right: u64 },
    /// Division (or inversion) by zero.
    DivisionByZero,
    /// The field's two-adicity does not cover the requested transform size,
    /// or the input length is not a power of two.
    UnsupportedTransformSize { size: usize, two_adicity: u32 },
    /// Interpolation or grid nodes contain a repeated value.
    DuplicateNodes,
    /// Matrix or vector shapes do not line up.
    DimensionMismatch(String),
    /// A long-vector component exceeds the degree bound implied by the
    /// chunk count.
    ChunkDegreeOverflow { degree: usize, bound: usize },
    /// The point set was required to have pairwise distinct x-coordinates
    /// but does not.
    DistinctnessViolated,
    /// No shear parameter was found within the attempt budget.
    ShearSearchExhausted { attempts: usize },
    /// The point set contains two identical points; no shear can separate
    /// them.
    DuplicatePoints,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CompositeModulus(p) => write!(f, "modulus {p} is not prime"),
            Error::ModulusOutOfRange(p) => {
                write!(f, "modulus {p} is outside the supported range (2, 2^62)")
            }
            Error::FieldMismatch { left, right } => {
                write!(f, "field mismatch: operands over F_{left} and F_{right}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::UnsupportedTransformSize { size, two_adicity } => write!(
                f,
                "transform size {size} unsupported (field two-adicity is {two_adicity})"
            ),
            Error::DuplicateNodes => write!(f, "nodes contain a repeated value"),
            Error::DimensionMismatch(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::ChunkDegreeOverflow { degree, bound } => write!(
                f,
                "vector component degree {degree} exceeds chunk bound {bound}"
            ),
            Error::DistinctnessViolated => {
                write!(f, "point set does not have pairwise distinct x-coordinates")
            }
            Error::ShearSearchExhausted { attempts } => {
                write!(f, "no separating shear found after {attempts} attempts")
            }
            Error::DuplicatePoints => write!(f, "point set contains identical points"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
