use thiserror::Error;

/// Errors raised when an operation's precondition is violated.
///
/// Every variant names the invariant that failed; callers (notably the CLI)
/// map all of these to a diagnostic plus a nonzero exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("input must be odd, got an even number")]
    EvenInput,

    #[error("operands must be coprime: gcd({a}, {b}) > 1")]
    NotCoprime { a: String, b: String },

    #[error("fraction {a}/{b} is not in lowest terms")]
    NotReduced { a: String, b: String },

    #[error("complete factorization required; input carries unsplit composite cofactors")]
    PartialFactorization,

    #[error("limit {given} exceeds the supported maximum {max}")]
    LimitExceeded { given: String, max: String },

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("congruence precondition violated: {0}")]
    Congruence(String),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
