//! Spectral Kaluza-Klein engine for the wave equation
//!
//! ```text
//! (∂_t² − Δ_x − ∂_z² + μ/z²) Φ = 0,        μ > −1/4,
//! ```
//!
//! posed either on the half-line z ∈ (0,∞) (the flattened Poincaré patch of
//! AdS⁵, Dirichlet behaviour at the horizon z = 0) or on the slab z ∈ (0,1)
//! bounded by a negative-tension Minkowski brane carrying the Robin condition
//! ∂_zΦ + (3/2)Φ = 0 at z = 1.
//!
//! The field is diagonalised by a Kaluza-Klein tower: a continuous family of
//! 3+1-dimensional Klein-Gordon fields of mass m on the half-line (Hankel
//! transform of order λ = √(μ+1/4)), or a discrete family of masses λ_n on
//! the slab (Bessel eigenfunctions of a Robin problem). Each mode evolves as
//! an exact harmonic oscillator, so evolution is spectrally accurate and the
//! conserved quantities are exact per mode.
//!
//! Crate layout:
//! * [`specfun`] — real-order Bessel evaluation, zero/eigenvalue finding,
//!   composite Gauss-Legendre quadrature and the Hankel transform pair.
//! * [`params`] — the model parameters μ, λ, α±, ν.
//! * [`field`] / [`datum`] — sampled field states and initial data.
//! * [`halfline`] — the continuous tower: decomposition, evolution,
//!   reconstruction, spectral energy.
//! * [`brane`] — the discrete tower for the slab.
//! * [`energy`] — grid-side energy in the first-order (α) form.
//! * [`verify`] — named physical checks: conservation, finite speed, lacuna,
//!   equipartition, decay fits, Strichartz norms, packet reflection and the
//!   flat-space lift residual.
//! * [`fd`] — an independent leapfrog finite-difference oracle.

pub mod brane;
pub mod datum;
pub mod energy;
pub mod error;
pub mod fd;
pub mod field;
pub mod halfline;
pub mod params;
pub mod specfun;
pub mod verify;

mod dst;
mod transverse;
mod util;

pub use error::{Error, Result};
pub use params::ModelParams;
