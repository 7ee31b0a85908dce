//! Brute-force supercharacter theory for small `U_n(F_q)`.
//!
//! Everything here is computed from the group actions directly: orbits are
//! closures under generator sets, subalgebra chains come from null spaces over
//! `F_q`, and Heisenberg characters are counted as conjugacy classes of the
//! quotient by `1 + n^3`. None of it consults the counting polynomials, so the
//! numbers can be compared against them.

mod chain;
mod counts;
mod orbit;
mod space;
mod truncated;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use chain::{ls_chain, xi_stats, ChainResult, Subspace, XiStats};
pub use counts::{
    c_orbit_sizes, count_alternating_heisenberg_characters, count_c_invariant, count_heisenberg_characters,
    count_supercharacter_families, irreducible_orbit_census, linear_character_stabilizer, tech_lem1_bruteforce,
    CInvariantKind, HeisMethod, HeisenbergCount, SupercharacterFamilies,
};
pub use orbit::{census, orbit, orbit_set, Orbit, OrbitCensus, OrbitMode};
pub use space::{FunctionalSpace, GroupKind, Support};
pub use truncated::{conjugacy_classes, ClassGroup, TruncatedElement};

/// Ambient sizes above this many points are refused unless overridden.
pub const DEFAULT_SIZE_GUARD: u64 = 1 << 24;

/// Environment variable read by [`size_guard`].
pub const SIZE_GUARD_ENV: &str = "UNITRI_SIZE_GUARD";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {points} points exceeds the size guard {limit} (set {SIZE_GUARD_ENV} to raise it)")]
    SpaceTooLarge { points: u128, limit: u64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("invalid oracle input: {0}")]
    Invalid(String),
}

/// Current size guard: [`DEFAULT_SIZE_GUARD`] unless the environment says otherwise.
pub fn size_guard() -> u64 {
    std::env::var(SIZE_GUARD_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&g| g > 0)
        .unwrap_or(DEFAULT_SIZE_GUARD)
}

pub(crate) fn check_guard(points: u128) -> Result<(), OracleError> {
    let limit = size_guard();
    if points > limit as u128 {
        Err(OracleError::SpaceTooLarge { points, limit })
    } else {
        Ok(())
    }
}
