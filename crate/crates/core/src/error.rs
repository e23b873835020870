use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live over different numbers of variables.
    VariableMismatch { left: usize, right: usize },
    /// Operands live on different numbers of strands.
    StrandMismatch { left: usize, right: usize },
    /// A generator index outside `1..strands`.
    GeneratorOutOfRange { index: i64, strands: usize },
    /// Matrix or map shapes do not compose.
    ShapeMismatch,
    /// A map handed to the idempotent splitter is not a degree-0 idempotent.
    NotIdempotent,
    /// The truncation bound must be even and non-negative.
    InvalidQmax(i32),
    /// A vector handed to the homology projector is not a cycle.
    NotACycle,
    /// Consecutive maps of a sliced complex do not compose to zero.
    NotAComplex { position: i32 },
    /// Outside what is implemented, or a construction found no witness.
    Unsupported(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VariableMismatch { left, right } => {
                write!(f, "polynomials over {left} and {right} variables")
            }
            Error::StrandMismatch { left, right } => {
                write!(f, "objects on {left} and {right} strands")
            }
            Error::GeneratorOutOfRange { index, strands } => {
                write!(f, "generator {index} out of range for {strands} strands")
            }
            Error::ShapeMismatch => f.write_str("incompatible shapes"),
            Error::NotIdempotent => f.write_str("map is not a degree-0 idempotent"),
            Error::InvalidQmax(q) => write!(f, "qmax must be even and non-negative, got {q}"),
            Error::NotACycle => f.write_str("vector is not a cycle"),
            Error::NotAComplex { position } => {
                write!(f, "maps at position {position} do not compose to zero")
            }
            Error::Unsupported(what) => write!(f, "unsupported: {what}"),
        }
    }
}

impl core::error::Error for Error {}
