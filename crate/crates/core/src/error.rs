use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector cannot be a generator")]
    ZeroGenerator,
    #[error("element {0} is not in the semigroup")]
    NotInSemigroup(String),
    #[error("operation requires a full semigroup given by equations")]
    RequiresFull,
    #[error("operation is only supported for dimension {expected} (got {found})")]
    UnsupportedDimension { expected: usize, found: usize },
    #[error("invalid diophantine system: {0}")]
    InvalidSystem(String),
    #[error("invalid group subset: {0}")]
    InvalidSubset(String),
    #[error("atom index {index} out of range for {count} atoms")]
    AtomIndex { index: usize, count: usize },
    #[error("integer overflow")]
    Overflow,
    #[error("step budget of {0} exceeded")]
    BudgetExceeded(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
