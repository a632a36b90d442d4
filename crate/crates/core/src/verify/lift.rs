//! Flat-space lift residual.
//!
//! For μ = (ν²−1)/4 the substitution Ψ = z^{−(N−1)/2}Φ with N = ν + 2
//! turns the half-line equation into the free radial wave equation in N
//! variables: ∂_t²Ψ = ∂_ρ²Ψ + ((N−1)/ρ)∂_ρΨ. The check evaluates that
//! residual by centred differences on three consecutive snapshots and a
//! uniform z grid; it must sit at the O(h²) truncation floor and halve
//! ×4 under refinement.

use crate::error::{Error, Result};
use crate::field::{FieldState, TransverseGrid, ZGridKind};
use crate::params::ModelParams;
use crate::util::pairwise_sum;

use super::VerificationReport;

#[derive(Clone, Copy, Debug)]
pub struct LiftConfig {
    /// interior window in ρ over which the residual is measured
    pub rho_window: (f64, f64),
    pub tolerance: f64,
}

/// Relative free-wave residual ‖∂_t²Ψ − Δ_N Ψ‖₂ / ‖∂_t²Ψ‖₂ from states at
/// (t − dt, t, t + dt) sharing one uniform staggered z grid.
pub fn lift_residual(
    states: &[FieldState; 3],
    params: &ModelParams,
    config: &LiftConfig,
) -> Result<VerificationReport> {
    let nu = params.require_nu("lift_residual")?;
    let n_dim = nu as f64 + 2.0;
    let mid = &states[1];
    if !matches!(mid.transverse, TransverseGrid::Independent { .. }) {
        return Err(Error::precondition("lift_residual", "lift check expects x-independent states"));
    }
    if mid.z.kind != ZGridKind::UniformStaggered {
        return Err(Error::precondition("lift_residual", "lift check needs a uniform z grid"));
    }
    let dt1 = mid.t - states[0].t;
    let dt2 = states[2].t - mid.t;
    if (dt1 - dt2).abs() > 1e-12 * dt1.abs() || dt1 <= 0.0 {
        return Err(Error::precondition("lift_residual", "states must be equispaced in time"));
    }
    let dt = dt1;
    let nodes = &mid.z.quad.nodes;
    let n = nodes.len();
    let h = mid.z.quad.domain_end / n as f64;
    let lift_exp = -(n_dim - 1.0) / 2.0;

    let psi = |s: &FieldState, i: usize| -> f64 { nodes[i].powf(lift_exp) * s.phi[[i, 0]] };

    let mut resid = Vec::new();
    let mut scale = Vec::new();
    for i in 1..n - 1 {
        let rho = nodes[i];
        if rho < config.rho_window.0 || rho > config.rho_window.1 {
            continue;
        }
        let ddt = (psi(&states[0], i) - 2.0 * psi(mid, i) + psi(&states[2], i)) / (dt * dt);
        let lap = (psi(mid, i - 1) - 2.0 * psi(mid, i) + psi(mid, i + 1)) / (h * h)
            + (n_dim - 1.0) / rho * (psi(mid, i + 1) - psi(mid, i - 1)) / (2.0 * h);
        let r = ddt - lap;
        resid.push(r * r);
        scale.push(ddt * ddt);
    }
    if resid.len() < 8 {
        return Err(Error::precondition("lift_residual", "residual window contains too few nodes"));
    }
    let rel = (pairwise_sum(&resid) / pairwise_sum(&scale).max(1e-300)).sqrt();
    let passed = rel < config.tolerance;
    Ok(VerificationReport::new("lift_residual", passed, config.tolerance)
        .with("relative_residual", rel)
        .with("lift_dimension", n_dim)
        .with("h", h)
        .with("dt", dt))
}
