//! Real-order Bessel functions, their zeros, Robin eigenvalues, composite
//! Gauss-Legendre quadrature and the order-λ Hankel transform pair.
//!
//! This is the numerical kernel the tower solvers are built on. Everything
//! here is pure and thread-safe; the transform precomputes its oscillatory
//! kernel once so repeated evaluations are matrix products.

mod bessel;
mod gamma;
mod hankel;
mod quad;
mod zeros;

pub use bessel::{bessel_j, bessel_j_deriv};
pub use gamma::{gamma, ln_gamma};
pub use hankel::{hankel_forward, hankel_inverse, uniform_m_grid, HankelSpectrum, HankelTransform};
pub use quad::{
    composite_gauss_legendre, composite_gauss_legendre_graded, gauss_legendre_rule, QuadratureGrid,
};
pub use zeros::{bessel_zeros, robin_condition, robin_eigenvalues};
