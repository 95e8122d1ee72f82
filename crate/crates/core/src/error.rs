use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus must be a monic polynomial of degree {degree} with coefficients below {p}")]
    BadModulus { p: u32, degree: usize },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u32 },
    #[error("generator has order {order}, expected {expected}")]
    NonPrimitiveGenerator { order: u64, expected: u64 },
    #[error("field of order {size} exceeds the table limit {limit}")]
    FieldTooLarge { size: u64, limit: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to this field or space")]
    FieldMismatch,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("empty subspace family")]
    EmptyFamily,
    #[error("cyclotomic primes differ: {left} vs {right}")]
    PrimeMismatch { left: u32, right: u32 },
    #[error("Galois index must be a nonzero residue")]
    ZeroIndex,
    #[error("Galois trace is not rational")]
    NonRationalResult,
    #[error("defining set contains zero")]
    ZeroInD,
    #[error("domain mismatch")]
    DomainMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("only p = 2 is supported here")]
    OddPrimeUnsupported,
    #[error("k = {k} outside 0..={m}")]
    KOutOfRange { k: i64, m: usize },
    #[error("empty defining set")]
    EmptyDefiningSet,
    #[error("enumeration needs {work} steps, budget is {budget}")]
    TooLargeToEnumerate { work: u128, budget: u128 },
    #[error("function equals a linear functional or is nonzero at 0")]
    ConditionFpViolated,
    #[error("complement variant needs a characteristic function")]
    NonIndicatorComplement,
    #[error("exact division failed: {0}")]
    DivisibilityAssertionFailed(String),
    #[error("beta must be nonzero")]
    ZeroBeta,
    #[error("exact division by (zeta - 1) failed")]
    ExactDivisionFailed,
    #[error("defining-set code has rank {rank} < m = {m}")]
    DeficientRank { rank: usize, m: usize },
    #[error("code has no nonzero codeword")]
    ZeroCode,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("m must be even")]
    OddM,
    #[error("m = {m} too small (need at least {min})")]
    MTooSmall { m: usize, min: usize },
    #[error("no injection exists for these parameters")]
    InjectionImpossible,
    #[error("t = {t} outside 0..={m}")]
    TOutOfRange { t: usize, m: usize },
    #[error("set is not closed under nonzero scalars")]
    NotScalarClosed,
    #[error("unknown example id {0:?}")]
    UnknownExample(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
