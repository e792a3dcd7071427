//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The arguments share a common factor where coprimality is required.
    #[error("arguments are not coprime: gcd({a}, {b}) > 1")]
    NotCoprime { a: i128, b: i128 },

    /// Jacobi symbols are only defined for odd positive lower arguments.
    #[error("Jacobi symbol requires an odd modulus, got {0}")]
    EvenModulus(i128),

    /// The two moduli of a CRT split must be coprime.
    #[error("moduli are not coprime: gcd({0}, {1}) > 1")]
    NotCoprimeModuli(u64, u64),

    /// Brute-force Gauss evaluation is capped at q <= 10^6.
    #[error("modulus {0} exceeds the brute-force oracle cap of 10^6")]
    OracleTooLarge(u64),

    /// Generic size cap for exhaustive enumerations.
    #[error("problem size {size} exceeds the cap {cap} for {what}")]
    TooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    DomainError(String),

    /// Phase reduction would overflow 128-bit intermediates.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The window's Fourier tail at the requested truncation is not under control.
    #[error("window transform tail bound {bound:.3e} exceeds {limit:.1e} at truncation {truncation}")]
    SlowDecay {
        bound: f64,
        limit: f64,
        truncation: i64,
    },

    /// A divisibility precondition of the dual-sum transform failed.
    #[error("summation condition violated: {0}")]
    ConditionViolated(String),

    /// No admissible (l, s) pair was found (unreachable for valid input).
    #[error("no admissible approximation pair exists")]
    NoPair,

    /// Empty summation range.
    #[error("empty range: {0}")]
    EmptyRange(String),

    /// Invalid sweep/trace configuration.
    #[error("config error: {0}")]
    ConfigError(String),
}

pub type Result<T> = std::result::Result<T, Error>;
