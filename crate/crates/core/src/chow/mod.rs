//! Truncated Chow ring `Q[h]/(h^{n+1})` of projective n-space and the
//! characteristic-class calculus built on it.
//!
//! Coefficients are [`MultiPoly`] so Chern classes may depend on symbolic
//! parameters (`r`, `c1`, ...); the Hilbert variable `t` enters only through
//! `exp(t h)` when an Euler characteristic is taken.

mod characteristic;
mod elem;
pub mod splitting;

pub use characteristic::{
    adams_operation, chern_character, chern_from_character, euler_characteristic,
    euler_from_character, koszul_euler, power_sums, todd_class, wedge_cube_character,
    wedge_powers, wedge_square_character,
};
pub use elem::{BundleClass, ChowElem};
pub use splitting::{splitting_oracle, IdentityCheck, SplittingReport};

use thiserror::Error;

/// Largest ambient dimension accepted.
pub const MAX_AMBIENT_DIM: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("ambient dimension {0} outside 1..={MAX_AMBIENT_DIM}")]
    AmbientDim(usize),
    #[error("bundle rank must be at least 1")]
    ZeroRank,
    #[error("expected {expected} Chern classes, got {found}")]
    ChernCount { expected: usize, found: usize },
    #[error("c_{index} is nonzero but exceeds the ambient dimension {ambient}")]
    BeyondAmbient { index: usize, ambient: usize },
    #[error("operation needs rank {expected}, bundle has rank {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("degree-0 part of the character is not a nonnegative integer: {0}")]
    NotARank(String),
    #[error("character of rank {rank} has nonzero c_{index} = {value}")]
    ExcessChernClass { rank: usize, index: usize, value: String },
    #[error("polynomial is not symmetric in the roots: leading exponents {0:?}")]
    NotSymmetric(Vec<u32>),
}
