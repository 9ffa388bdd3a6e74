use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be at least 1 (got {0})")]
    InvalidGenus(i64),
    #[error("number of factors must be at least 1 (got {0})")]
    InvalidPower(i64),
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("factor index {index} out of range 1..={m}")]
    IndexOutOfRange { index: usize, m: usize },
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("projection from a single factor to the base is not modeled")]
    ProjectionToBase,
    #[error("multiplication by zero on every factor is not modeled")]
    ZeroMultiplier,
    #[error("twist vector must be nonzero")]
    ZeroVector,
    #[error("integer overflow while rescaling a twist vector")]
    Overflow,
    #[error("{what} out of range: {value} not in {lo}..={hi}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        lo: i64,
        hi: i64,
    },
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("resource bound exceeded: {what} needs {needed}, bound is {bound}")]
    ResourceBound {
        what: &'static str,
        needed: u128,
        bound: u128,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
