use thiserror::Error;

/// Errors raised by the algebra, semigroup and power-map constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^32)")]
    ModulusTooLarge(u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },
    #[error("invalid semigroup table: {0}")]
    InvalidTable(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("subset is not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("operation requires a commutative algebra")]
    NotCommutative,
    #[error("exponent must be positive")]
    ZeroExponent,
    #[error("characteristic {p} must exceed {n}")]
    CharTooSmall { p: u64, n: usize },
    #[error("size cap exceeded: {what} needs {needed}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("unknown basis label {0:?}")]
    UnknownLabel(String),
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
