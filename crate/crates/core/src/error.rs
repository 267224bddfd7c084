use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not allowed")]
    CharacteristicForbidden(u64),
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported range")]
    ModulusOutOfRange(u64),
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("a * conj(a) has a nonzero imaginary component")]
    NonScalarNorm,
    #[error("octonion has a nonzero real component")]
    NotImaginary,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value has a surviving imaginary component")]
    NonScalarValue,
    #[error("matrix is not in the expected subspace: {0}")]
    NotInSubspace(String),
    #[error("product formula {formula} failed: {detail}")]
    FormulaMismatch { formula: String, detail: String },
    #[error("algebra has zero multiplication")]
    DegenerateAlgebra,
    #[error("identity or operation not meaningful for this algebra's flavor: {0}")]
    FlavorMismatch(String),
    #[error("structure constants violate the declared flavor at ({0}, {1})")]
    FlavorViolation(usize, usize),
    #[error("prime {0} divides a denominator")]
    PrimeDividesDenominator(u64),
    #[error("modular kernel dimensions disagree across primes: {0:?}")]
    DimensionDisagreement(alloc::vec::Vec<(u64, usize)>),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("forms are not proportional: {0}")]
    NotProportional(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
