//! Exact computation of value semigroups, Kähler differential value sets
//! and Milnor, delta and Tjurina numbers of reduced plane curve germs.
//!
//! The crate builds without `std` (with `alloc`). The `std` feature adds
//! thread-parallel value-set extraction.

#![cfg_attr(not(feature = "std"), no_std)]
// Elimination and matrix code reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod branch;
pub mod exactalg;
pub mod family;
pub mod invariants;
pub mod valmod;
pub mod valueset;

#[cfg(test)]
mod testutil;

use alloc::string::String;

/// Errors raised by the library.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("both inputs are constant in the elimination variable")]
    InvalidElimination,
    #[error("invalid parametrization: {0}")]
    InvalidParametrization(String),
    #[error("truncation order {attempted} is too small")]
    TruncationTooSmall { attempted: u32 },
    #[error("a Puiseux coefficient is not rational")]
    UnsupportedCoefficientField,
    #[error("the input polynomial is not reduced")]
    NonReducedInput,
    #[error("the input polynomial does not vanish at the origin")]
    NotThroughOrigin,
    #[error("branches are not distinct")]
    BranchesNotDistinct,
    #[error("point lies outside the bounding box")]
    OutOfBox,
    #[error("point is not in the value set")]
    NotInSet,
    #[error("the second value set is not contained in the first")]
    NotASubset,
    #[error("reference point lies below the conductor")]
    ConductorViolation,
    #[error("colength did not stabilize below degree {cap}")]
    OracleInconclusive { cap: u32 },
    #[error("{0}")]
    Unsupported(String),
}
