use thiserror::Error;

/// Errors raised by constructions, verifiers and file conversions.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("modulus {modulus:?} is not primitive over F_{p}")]
    NotPrimitive { p: u32, modulus: Vec<u32> },

    #[error("field order {q} exceeds the configured limit {limit}")]
    FieldTooLarge { q: u64, limit: u64 },

    #[error("zero has no discrete logarithm")]
    ZeroLog,

    #[error("{d} does not divide {n}")]
    NotDivisor { d: u64, n: u64 },

    #[error("class index {index} out of range for {d} classes")]
    ClassIndex { index: u32, d: u32 },

    #[error("gcd({a}, {b}) = {gcd}, expected 1")]
    NotCoprime { a: u64, b: u64, gcd: u64 },

    #[error("element {0:?} does not belong to the group")]
    ElementOutOfRange(Vec<i64>),

    #[error("block has {0} elements, at least 2 are required")]
    BlockTooSmall(usize),

    #[error("pattern check failed: {0}")]
    Pattern(String),

    #[error("missing pattern annotation")]
    MissingPattern,

    #[error("congruence condition violated: {0}")]
    Congruence(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown catalog id `{0}`")]
    UnknownId(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed design file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
