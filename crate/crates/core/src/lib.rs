//! Exact enumeration, counting and sieve audits for monic admissible
//! polynomials: monic `f ∈ Z[x]` of degree `n` whose coefficients sum to `n!`.
//!
//! Every count is an arbitrary-precision integer and every bound a rational;
//! floating point appears only in reference magnitudes and the sieve level.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod finite_field;
pub mod integer_irreducibility;
pub mod polynomials;
pub mod sieve;

pub use error::{Error, Result};

/// Feasibility limits shared by the enumeration-backed operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible set that may be enumerated.
    pub max_enum: u64,
    /// Largest search space for the exhaustive oracles (`p^n` over `F_p`).
    pub max_oracle: u64,
    /// Candidate factors visited per polynomial before giving up.
    pub max_search: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enum: polynomials::DEFAULT_ENUMERATION_LIMIT,
            max_oracle: finite_field::DEFAULT_FIELD_ORACLE_LIMIT,
            max_search: integer_irreducibility::DEFAULT_SEARCH_LIMIT,
        }
    }
}
