use thiserror::Error;

/// Errors produced by table construction, sum evaluation and verifiers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {n} is outside the sieve table range 1..={limit}")]
    OutOfRange { n: u64, limit: u64 },

    #[error("failed to allocate sieve tables for limit {limit}")]
    Resource { limit: u64 },

    #[error("exact mode requires an integer exponent with |s| <= {max}, got {got}")]
    ExactExponent { got: String, max: i32 },

    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    #[error("sieving up to {p} requires x >= {primorial} (the primorial of {p}), got x = {x}")]
    BelowPrimorial { x: f64, p: u64, primorial: u64 },

    #[error("coprime counting by inclusion-exclusion is capped at 20 primes, got {count}")]
    TooManyPrimes { count: usize },

    #[error("{what}: requires {requirement}, got {got}")]
    Domain {
        what: &'static str,
        requirement: &'static str,
        got: String,
    },

    #[error("functional-equation factor is near a pole at s = {s}")]
    PoleProximity { s: String },

    #[error("zeros file: no zeros")]
    ZerosEmpty,

    #[error("zeros file line {line}: {msg}")]
    ZerosFormat { line: usize, msg: String },

    #[error("zeros file line {line}: ordinates must be strictly ascending")]
    ZerosOrder { line: usize },

    #[error("zeros file: first ordinate {value} outside (14.0, 14.3); wrong file?")]
    ZerosFirstOutOfRange { value: f64 },

    #[error("requested {requested} zero pairs but only {available} zeros are loaded")]
    InsufficientZeros { requested: usize, available: usize },

    #[error("sieve cache: {msg}")]
    Cache { msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
