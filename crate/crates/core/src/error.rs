//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the crate.
///
/// Operations that can fail return `Result<T, Error>`; panics are reserved for
/// internal invariant breakage.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed cycle notation or group-spec text. `offset` is a byte offset
    /// into the parsed string.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A point outside `1..=degree` appeared in input.
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: u32, degree: u32 },

    /// The same point appeared twice in one permutation.
    #[error("point {point} repeated in permutation")]
    RepeatedPoint { point: u32 },

    /// Two permutations of different degrees were combined.
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    /// A group constructor was given no generators.
    #[error("empty generator list")]
    EmptyGenerators,

    /// A subgroup argument is not actually contained in the ambient group.
    #[error("containment violation: {context}")]
    NotContained { context: &'static str },

    /// An argument required to be normal is not.
    #[error("subgroup is not normal: conjugate of a generator escapes")]
    NotNormal,

    /// An argument required to be solvable is not.
    #[error("the operation requires a solvable group")]
    NotSolvable,

    /// A configured cap would be exceeded.
    #[error("cap exceeded: {what} = {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    /// A prime was expected.
    #[error("{value} is not prime")]
    NotPrime { value: u64 },

    /// The prime does not divide the group order.
    #[error("prime {p} does not divide the group order")]
    PrimeDoesNotDivide { p: u64 },

    /// Group order below the range the bound applies to.
    #[error("order {order} is below 3, outside the theorem range")]
    OutOfTheoremRange { order: u64 },

    /// A table failed validation (not a Latin square, bad identity row, ...).
    #[error("invalid multiplication table: {message}")]
    InvalidTable { message: String },

    /// Unknown family name or bad family parameters.
    #[error("invalid family spec: {message}")]
    InvalidFamily { message: String },

    /// The automorphism-count formula was applied outside its domain.
    #[error("formula domain violation: {message}")]
    FormulaDomain { message: String },

    /// A certified claim that should always hold failed verification.
    /// This is the one error that encodes a falsified mathematical claim.
    #[error("theorem violation: {message}")]
    TheoremViolation { message: String },

    /// Randomized search ran out of budget without completing.
    #[error("search budget exhausted: {what}")]
    BudgetExhausted { what: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
