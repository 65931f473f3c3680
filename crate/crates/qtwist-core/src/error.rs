//! Error type shared by all modules of the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of exact Ore-algebra computations.
///
/// All variants are mathematical or resource errors; none of them indicate IO
/// problems (the crate performs no IO).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Inversion or division by zero in a field or ring.
    DivisionByZero,
    /// Exact division requested but the divisor does not divide the dividend.
    InexactDivision,
    /// An exponent was not divisible by the requested root index.
    Inadmissible(String),
    /// Operands belong to different variable contexts or algebra signatures.
    SignatureMismatch,
    /// More variables than the packed monomial representation supports.
    TooManyVariables { requested: usize, max: usize },
    /// Invalid algebra or order declaration (duplicate names, bad index, ...).
    BadSignature(String),
    /// A leading coefficient required to be nonzero was zero.
    ZeroLeadingCoefficient,
    /// The left ideal (or module) is not zero-dimensional: infinite staircase.
    NotZeroDimensional,
    /// A configured resource cap was exceeded.
    BudgetExceeded(String),
    /// A sequence table does not cover the index range needed by an operator.
    InsufficientTable(String),
    /// Recurrence unrolling hit a vanishing leading coefficient at the given index.
    SingularStep(i64),
    /// Operation undefined for the zero operator.
    ZeroOperator,
    /// A root of unity did not have the promised multiplicative order.
    NotPrimitiveRoot { order: u32 },
    /// Internal invariant violated; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::InexactDivision => write!(f, "inexact polynomial division"),
            Error::Inadmissible(what) => write!(f, "inadmissible substitution: {what}"),
            Error::SignatureMismatch => write!(f, "mismatched variable context or algebra"),
            Error::TooManyVariables { requested, max } => {
                write!(f, "{requested} variables requested, at most {max} supported")
            }
            Error::BadSignature(what) => write!(f, "invalid algebra signature: {what}"),
            Error::ZeroLeadingCoefficient => write!(f, "zero leading coefficient"),
            Error::NotZeroDimensional => {
                write!(f, "left ideal is not zero-dimensional (infinite staircase)")
            }
            Error::BudgetExceeded(what) => write!(f, "resource cap exceeded: {what}"),
            Error::InsufficientTable(what) => write!(f, "sequence table too small: {what}"),
            Error::SingularStep(n) => {
                write!(f, "leading coefficient vanishes at index {n}; cannot unroll")
            }
            Error::ZeroOperator => write!(f, "operation undefined for the zero operator"),
            Error::NotPrimitiveRoot { order } => {
                write!(f, "number is not a primitive root of unity of order {order}")
            }
            Error::Internal(what) => write!(f, "internal invariant violated: {what}"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}
