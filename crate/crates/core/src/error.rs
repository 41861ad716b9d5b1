//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by a zero scalar (or inversion of zero).
    DivisionByZero,
    /// Two values with incompatible scalar modes were combined.
    ModeMismatch,
    /// A rational function was evaluated at a zero of its denominator.
    PoleAtSpecialization,
    /// A linear-algebra certificate failed (unexpected rank).
    RankMismatch,
    /// A generator or entry index is outside its valid range.
    IndexOutOfRange,
    /// The requested construction needs the semisimplicity condition.
    NotSemisimple,
    /// Two tableaux (or a tableau and a partition) have different shapes.
    ShapeMismatch,
    /// Two elements live over different ranks `n`.
    SizeMismatch,
    /// A precondition of a bijection or formula does not hold.
    HypothesisViolated,
    /// A computed coefficient does not match its required value.
    CoefficientMismatch,
    /// Malformed text input.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::ModeMismatch => write!(f, "scalar mode mismatch"),
            Error::PoleAtSpecialization => write!(f, "pole at specialization"),
            Error::RankMismatch => write!(f, "rank mismatch"),
            Error::IndexOutOfRange => write!(f, "index out of range"),
            Error::NotSemisimple => write!(f, "parameters violate the semisimplicity condition"),
            Error::ShapeMismatch => write!(f, "shape mismatch"),
            Error::SizeMismatch => write!(f, "size mismatch"),
            Error::HypothesisViolated => write!(f, "hypothesis violated"),
            Error::CoefficientMismatch => write!(f, "coefficient mismatch"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

/// Convenient alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
