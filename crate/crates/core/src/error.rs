use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no primitive polynomial of degree {degree} over F_{p} within the search bound")]
    NoPrimitivePolynomial { p: u64, degree: u32 },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("p = {p} divides the group order {order}")]
    NotCoprime { p: u64, order: u64 },

    #[error("Hermitian duality requires an even residue degree, got s = {0}")]
    OddDegree(u32),

    #[error("ring has {size} elements, exceeding the exhaustive bound {bound}")]
    TooLarge { size: String, bound: u64 },

    #[error("no self-dual code exists: {0}")]
    NoSelfDualCode(String),

    #[error("provider `{provider}` cannot supply {quantity} for {ring}: {reason}")]
    ProviderDomain {
        provider: String,
        quantity: String,
        ring: String,
        reason: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
