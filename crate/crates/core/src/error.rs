use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("{what} = {value} exceeds the supported bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("multinomial parts sum to {parts} but the total is {total}")]
    PartsMismatch { total: u64, parts: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The formula produced a non-integral value where an integer was
    /// promised. Only possible outside the formula's domain (p | n for the
    /// special forms); inside the domain it is reported as `InternalInexact`.
    #[error("value is not integral outside the formula's domain: {0}")]
    NonIntegral(String),

    #[error("internal consistency failure: {0}")]
    InternalInexact(String),

    #[error("series diverges: {0}")]
    Diverges(String),

    #[error("degree slice is unbounded: {0}")]
    Unbounded(String),

    #[error("polynomial is not the characteristic polynomial of an anti-hermitian matrix")]
    NotAntihermitianClass,
}

impl Error {
    /// `BoundExceeded` for a guarded size.
    pub fn bound(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::BoundExceeded {
            what,
            value: value.to_string(),
            limit: limit.to_string(),
        }
    }
}
