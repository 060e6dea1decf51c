//! Crate-wide error type.

use std::fmt;

/// Errors raised by exact-arithmetic and algebra operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfError {
    /// Division by zero in the scalar field.
    DivisionByZero,
    /// Conductor exceeds the supported bound.
    ConductorTooLarge(u64),
    /// Tensor elements of different arity were combined.
    ArityMismatch { left: usize, right: usize },
    /// A linear system was singular where an inverse was required.
    NotInvertible,
    /// Operation requires an abelian group.
    NotAbelian,
    /// Input exceeds a size guardrail.
    TooLarge(String),
    /// A vector claimed to be an odd primitive element is not.
    NotPrimitive(usize),
    /// A matrix required to be symmetric is not.
    NotSymmetric,
    /// Polarization data does not give a perfect pairing K x Khat.
    BadPolarization(String),
    /// A twist was used without a passing validity certificate.
    InvalidTwist(String),
    /// Operation requires a group algebra.
    NotGroupAlgebra,
    /// The action space was expected to be purely odd.
    ParityError(String),
    /// Minimal-part closure failed to be a sub-Hopf-algebra.
    NotSubHopf(String),
    /// A bicharacter is degenerate where nondegeneracy is required.
    Degenerate(String),
    /// An R-matrix is not supported on idempotent x group lines.
    NotDiagonalizable(String),
    /// Representation decomposition did not match the bicharacter.
    DecompositionMismatch(String),
    /// No solution u of phi(u,g) = phi(g,g).
    NoSuchU,
    /// The requested comparison/operation is out of the supported range.
    Unsupported(String),
    /// Conjugation by u does not implement the parity involution.
    BadParityImplementer(String),
    /// Malformed input data (JSON schema violations carry a path).
    InvalidInput(String),
}

impl fmt::Display for HopfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfError::DivisionByZero => write!(f, "division by zero"),
            HopfError::ConductorTooLarge(n) => {
                write!(f, "conductor {n} exceeds the supported bound 256")
            }
            HopfError::ArityMismatch { left, right } => {
                write!(f, "tensor arity mismatch: {left} vs {right}")
            }
            HopfError::NotInvertible => write!(f, "element is not invertible"),
            HopfError::NotAbelian => write!(f, "group is not abelian"),
            HopfError::TooLarge(what) => write!(f, "input too large: {what}"),
            HopfError::NotPrimitive(i) => {
                write!(f, "basis vector {i} is not an odd primitive element")
            }
            HopfError::NotSymmetric => write!(f, "matrix is not symmetric"),
            HopfError::BadPolarization(why) => write!(f, "bad polarization: {why}"),
            HopfError::InvalidTwist(why) => write!(f, "invalid twist: {why}"),
            HopfError::NotGroupAlgebra => write!(f, "algebra is not a group algebra"),
            HopfError::ParityError(why) => write!(f, "parity error: {why}"),
            HopfError::NotSubHopf(why) => write!(f, "closure is not a sub-Hopf-algebra: {why}"),
            HopfError::Degenerate(why) => write!(f, "degenerate form: {why}"),
            HopfError::NotDiagonalizable(why) => write!(f, "not diagonalizable: {why}"),
            HopfError::DecompositionMismatch(why) => {
                write!(f, "decomposition mismatch: {why}")
            }
            HopfError::NoSuchU => write!(f, "no element u satisfies phi(u,g) = phi(g,g)"),
            HopfError::Unsupported(why) => write!(f, "unsupported: {why}"),
            HopfError::BadParityImplementer(why) => {
                write!(f, "element does not implement parity: {why}")
            }
            HopfError::InvalidInput(why) => write!(f, "invalid input: {why}"),
        }
    }
}

impl std::error::Error for HopfError {}

pub type Result<T> = std::result::Result<T, HopfError>;
