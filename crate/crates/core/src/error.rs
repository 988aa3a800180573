use num_bigint::BigUint;
use thiserror::Error;

/// Failures raised by the toolkit.
///
/// The three `*TooLarge` / `SearchSpaceExceeded` variants are feasibility
/// limits rather than mathematical errors; callers can retry with a larger
/// limit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree zero: a polynomial needs at least one non-leading coefficient")]
    DegreeZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the supported range")]
    ModulusTooLarge(u64),
    #[error("moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("oracle too large: {size} cases exceed the limit of {limit}")]
    OracleTooLarge { size: BigUint, limit: u64 },
    #[error("enumeration too large: {count} elements exceed the limit of {limit}")]
    EnumerationTooLarge { count: BigUint, limit: u64 },
    #[error("search space exceeded: more than {limit} candidate factors")]
    SearchSpaceExceeded { limit: u64 },
    #[error("empty sieve: the density sum is zero")]
    EmptySieve,
    #[error("invalid sieve instance: {0}")]
    InvalidInstance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors caused by a configurable feasibility limit.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::OracleTooLarge { .. }
                | Error::EnumerationTooLarge { .. }
                | Error::SearchSpaceExceeded { .. }
        )
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegreeZero => "degree_zero",
            Error::NotPrime(_) => "not_prime",
            Error::ModulusTooLarge(_) => "modulus_too_large",
            Error::ModulusMismatch(..) => "modulus_mismatch",
            Error::ZeroDivisor => "zero_divisor",
            Error::OracleTooLarge { .. } => "oracle_too_large",
            Error::EnumerationTooLarge { .. } => "enumeration_too_large",
            Error::SearchSpaceExceeded { .. } => "search_space_exceeded",
            Error::EmptySieve => "empty_sieve",
            Error::InvalidInstance(_) => "invalid_instance",
            Error::InvalidArgument(_) => "invalid_argument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
