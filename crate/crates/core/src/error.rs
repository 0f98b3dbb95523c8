//! Error type shared across the crate.
//!
//! Two families of failures are distinguished: bad input (caller error) and
//! internal cross-check failures. The latter indicate that two independent
//! algorithms disagreed, or that an exactness guarantee (integrality, exact
//! division by p) was violated, and are surfaced as distinct variants so a
//! caller can map them to a distinct exit status.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported Cartan type {family}_{rank}")]
    UnsupportedCartan { family: char, rank: u32 },

    /// Two independent algorithms for the same quantity disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheckFailed(String),

    /// A matrix required to be integral had a non-integer entry.
    #[error("non-integral entry at ({row},{col}): {value}")]
    NonIntegralEntry {
        row: usize,
        col: usize,
        value: String,
    },

    /// A division guaranteed exact by the construction left a remainder.
    #[error("non-exact division by {divisor} in {context}")]
    NonExactDivision { divisor: u32, context: String },

    /// A pointwise product of invariant-factor lists broke the d_i | d_{i+1} chain.
    #[error("divisibility chain violated at position {position}")]
    DivisibilityViolated { position: usize },
}

impl Error {
    /// True for variants that signal an internal consistency failure rather
    /// than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::CrossCheckFailed(_)
                | Error::NonIntegralEntry { .. }
                | Error::NonExactDivision { .. }
                | Error::DivisibilityViolated { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
