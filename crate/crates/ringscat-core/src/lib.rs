//! Numerical core for the charged Klein-Gordon field on the Kaluza-Klein
//! extension of the De Sitter-Reissner-Nordström exterior.
//!
//! The crate is `no_std` and only needs an allocator. File formats, the
//! command line and thread pools live in the `ringscat` companion crate.
//!
//! Conventions used throughout:
//! - the horizon function carries `Q²/(2r²)`, not the textbook `Q²/r²`;
//! - coordinate order in every 5×5 array is `(t, z, r, θ, φ)`;
//! - a mode `(ℓ, 𝐳)` restricts to `ker(i∂_z + 𝐳)`, so `∂_z` acts as `i𝐳`;
//! - the wave solver works with the gauged potential `Ṽ = V − V_+`.

#![no_std]

extern crate alloc;

pub mod coords;
pub mod dual;
pub mod dynamics;
pub mod error;
pub mod geodesics;
pub mod geometry;
pub mod gridmodes;
pub mod linalg;
pub mod scattering;

pub use error::CoreError;
pub use geometry::{HorizonStructure, SpacetimeParams, SpacetimePoint};
pub use num_complex::Complex64;

/// The reference parameter set used across examples and acceptance runs:
/// `M = 1, Q = 0.5, Λ = 0.05, q = 0.05, m = 1`.
pub const REFERENCE_PARAMS: SpacetimeParams = SpacetimeParams {
    mass: 1.0,
    charge: 0.5,
    lambda: 0.05,
    q: 0.05,
    m: 1.0,
};
