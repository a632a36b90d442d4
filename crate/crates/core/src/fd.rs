//! Independent leapfrog finite-difference solver for the same equation,
//! used only to cross-validate the spectral engine on small instances.
//!
//! The grid is staggered, z_j = (j − 1/2)h, so the potential μ/z² is finite
//! at every node; the Dirichlet behaviour at z = 0 is an antisymmetric
//! ghost, and the brane Robin condition closes with a ghost point beyond
//! z = 1. Radial transverse runs evolve χ = rΦ on the same kind of
//! staggered r grid (antisymmetric ghost at r = 0). Everything is plain
//! second order; the oracle is authoritative only at its reported
//! resolution.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::field::{FieldState, TransverseGrid, ZGridKind};
use crate::params::ModelParams;
use crate::util::pairwise_sum;

/// Right-edge closure of the z domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RightBoundary {
    /// Plain truncation: place the far wall beyond R + T + 4h and nothing
    /// reflected re-enters within the run (finite propagation speed).
    None,
    /// Brane Robin condition ∂_zΦ + (3/2)Φ = 0 at z = 1.
    Robin32,
}

#[derive(Clone, Copy, Debug)]
pub struct FdConfig {
    pub h_z: f64,
    /// Present for radial (r, z) runs.
    pub h_r: Option<f64>,
    pub dt: f64,
    pub steps: usize,
    pub bc_right: RightBoundary,
    /// z extent (must be 1 for Robin32); r extent for radial runs is
    /// inherited from the initial state.
    pub z_max: f64,
}

impl FdConfig {
    /// Stability bound for the leapfrog step. The plain wave-equation rule
    /// dt ≤ 0.9 h/√d is not enough here: the potential contributes
    /// μ/z₁² = 4μ/h_z² at the first staggered node, so the spectral radius
    /// of the spatial operator is ω_max² ≈ 4/h_z² + 4/h_r² + 4μ/h_z², and
    /// dt must stay below 0.9·(2/ω_max).
    pub fn cfl_limit(&self, mu: f64) -> f64 {
        let mut omega2 = (4.0 + 4.0 * mu.max(0.0)) / (self.h_z * self.h_z);
        if let Some(hr) = self.h_r {
            omega2 += 4.0 / (hr * hr);
        }
        0.9 * 2.0 / omega2.sqrt()
    }

    pub fn validate(&self, params: &ModelParams) -> Result<()> {
        if !(self.h_z > 0.0 && self.dt > 0.0 && self.z_max > 0.0) {
            return Err(Error::domain("FdConfig", "h_z, dt, z_max must be positive"));
        }
        let limit = self.cfl_limit(params.mu);
        if self.dt > limit {
            return Err(Error::Cfl { dt: self.dt, limit });
        }
        if self.bc_right == RightBoundary::Robin32 && (self.z_max - 1.0).abs() > 1e-12 {
            return Err(Error::domain("FdConfig", "Robin closure requires z_max = 1"));
        }
        Ok(())
    }

    /// Largest number of equal steps covering `t_end` at ~80% of the CFL
    /// bound.
    pub fn steps_for(t_end: f64, dt_max: f64) -> usize {
        (t_end / (0.8 * dt_max)).ceil() as usize
    }
}

/// One evolved snapshot plus its velocity (centred difference in time).
pub struct FdRun {
    pub states: Vec<FieldState>,
    /// Discrete leapfrog energy at each recorded step midpoint.
    pub energies: Vec<f64>,
}

/// Leapfrog evolution of ∂_t²Φ = Δ_grid Φ − (μ/z²)Φ.
///
/// `state0` must be sampled on a uniform staggered grid matching `config`
/// (z spacing h_z, and h_r for radial runs). Snapshots are recorded every
/// `record_every` steps (always including the final one).
pub fn fd_evolve(
    state0: &FieldState,
    params: &ModelParams,
    config: &FdConfig,
    record_every: usize,
) -> Result<FdRun> {
    config.validate(params)?;
    state0.validate()?;
    if state0.z.kind != ZGridKind::UniformStaggered {
        return Err(Error::precondition("fd_evolve", "initial state must live on the staggered grid"));
    }
    let n_z = state0.z.len();
    let h = state0.z.quad.domain_end / n_z as f64;
    if (h - config.h_z).abs() > 1e-12 * h || (state0.z.quad.domain_end - config.z_max).abs() > 1e-12 {
        return Err(Error::shape("fd_evolve", "state grid does not match the configuration"));
    }
    let radial = match (&state0.transverse, config.h_r) {
        (TransverseGrid::Independent { k }, None) => {
            if *k != 0.0 {
                return Err(Error::precondition("fd_evolve", "FD oracle treats k = 0 only"));
            }
            None
        }
        (TransverseGrid::Radial(g), Some(hr)) => {
            if (g.h() - hr).abs() > 1e-12 * hr {
                return Err(Error::shape("fd_evolve", "r spacing does not match configuration"));
            }
            Some(*g)
        }
        _ => return Err(Error::shape("fd_evolve", "transverse layout does not match configuration")),
    };

    let dt = config.dt;
    let mu = params.mu;
    let z_nodes = &state0.z.quad.nodes;
    let inv_h2 = 1.0 / (h * h);

    // evolve chi = r·phi for radial runs (Dirichlet in r via antisymmetry)
    let to_chi = |phi: &Array2<f64>| -> Array2<f64> {
        match radial {
            None => phi.clone(),
            Some(g) => {
                let r = g.nodes();
                let mut chi = phi.clone();
                for iz in 0..n_z {
                    for ir in 0..r.len() {
                        chi[[iz, ir]] *= r[ir];
                    }
                }
                chi
            }
        }
    };

    let mut prev = to_chi(&state0.phi);
    let chi_vel = to_chi(&state0.dphi);

    // Taylor start: χ¹ = χ⁰ + dt·χ_t + (dt²/2)(Lχ⁰)
    let l_prev = apply_operator(&prev, z_nodes, inv_h2, mu, radial.as_ref(), config.bc_right, h);
    let mut cur = &prev + &(dt * &chi_vel) + &(0.5 * dt * dt * &l_prev);

    let mut states = Vec::new();
    let mut energies = Vec::new();

    // entering iteration `step`: prev = χ^{step−1}, cur = χ^{step}
    for step in 1..=config.steps {
        let l_cur = apply_operator(&cur, z_nodes, inv_h2, mu, radial.as_ref(), config.bc_right, h);
        let next = 2.0 * &cur - &prev + dt * dt * &l_cur;
        if step % record_every == 0 || step == config.steps {
            // phi at t = step·dt, centred velocity (χ^{n+1} − χ^{n−1})/2dt
            let phi = from_chi(&cur, radial.as_ref(), n_z);
            let vel_chi = (&next - &prev) / (2.0 * dt);
            let vel = from_chi(&vel_chi, radial.as_ref(), n_z);
            let state = FieldState::new(step as f64 * dt, state0.transverse, state0.z.clone(), phi, vel)?;
            states.push(state);
            energies.push(leapfrog_energy(&cur, &next, dt, z_nodes, inv_h2, mu, radial.as_ref(), config.bc_right, h));
        }
        prev = cur;
        cur = next;
        if step % 64 == 0 && cur.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { op: "fd_evolve", msg: format!("NaN guard tripped at step {step}") });
        }
    }
    Ok(FdRun { states, energies })
}

fn from_chi(chi: &Array2<f64>, radial: Option<&crate::field::RadialGrid>, n_z: usize) -> Array2<f64> {
    match radial {
        None => chi.clone(),
        Some(g) => {
            let r = g.nodes();
            let mut phi = chi.clone();
            for iz in 0..n_z {
                for ir in 0..r.len() {
                    phi[[iz, ir]] /= r[ir];
                }
            }
            phi
        }
    }
}

/// L = Δ_grid − μ/z² with the ghost closures. 1D stencils in z (rows) and,
/// for radial runs, in r (columns).
fn apply_operator(
    chi: &Array2<f64>,
    z_nodes: &[f64],
    inv_h2: f64,
    mu: f64,
    radial: Option<&crate::field::RadialGrid>,
    bc_right: RightBoundary,
    h: f64,
) -> Array2<f64> {
    let (n_z, n_r) = chi.dim();
    let mut out = Array2::zeros((n_z, n_r));
    // Robin ghost value multiplier at z = 1: ghost = c·last
    let robin_c = (4.0 - 3.0 * h) / (4.0 + 3.0 * h);
    for ir in 0..n_r {
        for iz in 0..n_z {
            let below = if iz == 0 { -chi[[0, ir]] } else { chi[[iz - 1, ir]] };
            let above = if iz + 1 < n_z {
                chi[[iz + 1, ir]]
            } else {
                match bc_right {
                    RightBoundary::None => 0.0,
                    RightBoundary::Robin32 => robin_c * chi[[n_z - 1, ir]],
                }
            };
            let lap_z = (below - 2.0 * chi[[iz, ir]] + above) * inv_h2;
            let z = z_nodes[iz];
            out[[iz, ir]] = lap_z - mu / (z * z) * chi[[iz, ir]];
        }
    }
    if let Some(g) = radial {
        let inv_hr2 = 1.0 / (g.h() * g.h());
        for iz in 0..n_z {
            for ir in 0..n_r {
                let left = if ir == 0 { 0.0 } else { chi[[iz, ir - 1]] };
                let right = if ir + 1 < n_r { chi[[iz, ir + 1]] } else { 0.0 };
                out[[iz, ir]] += (left - 2.0 * chi[[iz, ir]] + right) * inv_hr2;
            }
        }
    }
    out
}

/// Exactly conserved leapfrog invariant
/// E = ‖(χⁿ⁺¹ − χⁿ)/dt‖²/2 − ⟨Lχⁿ, χⁿ⁺¹⟩/2 over the grid measure.
#[allow(clippy::too_many_arguments)]
fn leapfrog_energy(
    prev: &Array2<f64>,
    cur: &Array2<f64>,
    dt: f64,
    z_nodes: &[f64],
    inv_h2: f64,
    mu: f64,
    radial: Option<&crate::field::RadialGrid>,
    bc_right: RightBoundary,
    h: f64,
) -> f64 {
    let l_prev = apply_operator(prev, z_nodes, inv_h2, mu, radial, bc_right, h);
    let measure = h * radial.map(|g| g.h()).unwrap_or(1.0);
    let mut terms = Vec::with_capacity(prev.len());
    for (i, (&a, &b)) in prev.iter().zip(cur.iter()).enumerate() {
        let v = (b - a) / dt;
        let lp = l_prev.as_slice().unwrap()[i];
        terms.push(measure * (0.5 * v * v - 0.5 * lp * b));
    }
    pairwise_sum(&terms)
}

/// Observed convergence order from three refinement levels of the same
/// scenario: runs with h, h/2, h/4 compared on the coarse nodes.
pub struct ConvergenceReport {
    pub coarse_diff: f64,
    pub fine_diff: f64,
    pub observed_order: f64,
}

/// p = log2(‖u_h − u_{h/2}‖ / ‖u_{h/2} − u_{h/4}‖) on shared nodes.
pub fn convergence_order(diff_coarse: f64, diff_fine: f64) -> f64 {
    (diff_coarse / diff_fine).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::GaussianBump;
    use crate::field::ZGrid;

    fn halfline_config(h: f64, t_end: f64, z_max: f64, mu: f64) -> FdConfig {
        let mut cfg =
            FdConfig { h_z: h, h_r: None, dt: 1.0, steps: 0, bc_right: RightBoundary::None, z_max };
        let steps = FdConfig::steps_for(t_end, cfg.cfl_limit(mu));
        cfg.dt = t_end / steps as f64;
        cfg.steps = steps;
        cfg
    }

    fn bump_state(z_max: f64, n: usize) -> FieldState {
        let z = ZGrid::uniform_staggered(z_max, n).unwrap();
        let bump = GaussianBump { z_center: 2.5, width: 0.25, amplitude: 1.0 };
        FieldState::from_functions(TransverseGrid::Independent { k: 0.0 }, z, |_, zv| bump.phi0(zv), |_, _| 0.0)
            .unwrap()
    }

    #[test]
    fn zero_data_stays_zero() {
        let params = ModelParams::new(3.75).unwrap();
        let z = ZGrid::uniform_staggered(4.0, 200).unwrap();
        let s = FieldState::from_functions(TransverseGrid::Independent { k: 0.0 }, z, |_, _| 0.0, |_, _| 0.0).unwrap();
        let run = fd_evolve(&s, &params, &halfline_config(0.02, 1.0, 4.0, params.mu), 10).unwrap();
        for st in &run.states {
            assert!(st.phi.iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn cfl_violation_rejected() {
        let params = ModelParams::new(0.0).unwrap();
        let cfg = FdConfig { h_z: 0.01, h_r: None, dt: 0.02, steps: 10, bc_right: RightBoundary::None, z_max: 4.0 };
        assert!(matches!(cfg.validate(&params), Err(Error::Cfl { .. })));
        // a step safe for the free wave can still violate the bound at high mass
        let heavy = ModelParams::new(15.0).unwrap();
        let cfg2 = FdConfig { h_z: 0.01, h_r: None, dt: 0.008, steps: 10, bc_right: RightBoundary::None, z_max: 4.0 };
        assert!(cfg2.validate(&params).is_ok());
        assert!(matches!(cfg2.validate(&heavy), Err(Error::Cfl { .. })));
    }

    #[test]
    fn leapfrog_energy_is_conserved() {
        let params = ModelParams::new(0.75).unwrap();
        let s = bump_state(8.0, 800);
        let run = fd_evolve(&s, &params, &halfline_config(0.01, 3.0, 8.0, params.mu), 50).unwrap();
        let e0 = run.energies[0];
        for &e in &run.energies {
            assert!((e - e0).abs() < 1e-6 * e0.abs(), "drift {:e}", (e - e0) / e0);
        }
    }

    #[test]
    fn brane_pure_mode_frequency_converges_at_second_order() {
        // evolve u₀ on the slab and fit the oscillation frequency; the
        // error against λ₀ must shrink ~4x per mesh halving
        let params = ModelParams::new(3.75).unwrap();
        let spec = crate::brane::brane_spectrum(&params, 1).unwrap();
        let l0 = spec.eigenvalues[0];
        let period = 2.0 * std::f64::consts::PI / l0;
        let t_end = 2.0 * period;
        let mut errs = Vec::new();
        for &n in &[200usize, 400] {
            let h = 1.0 / n as f64;
            let z = ZGrid::uniform_staggered(1.0, n).unwrap();
            let state = FieldState::from_functions(
                TransverseGrid::Independent { k: 0.0 },
                z,
                |_, zv| spec.eval_mode(0, zv).unwrap(),
                |_, _| 0.0,
            )
            .unwrap();
            let mut cfg = FdConfig {
                h_z: h,
                h_r: None,
                dt: 1.0,
                steps: 0,
                bc_right: RightBoundary::Robin32,
                z_max: 1.0,
            };
            let steps = FdConfig::steps_for(t_end, cfg.cfl_limit(params.mu));
            cfg.dt = t_end / steps as f64;
            cfg.steps = steps;
            let run = fd_evolve(&state, &params, &cfg, 1).unwrap();
            // projection onto the initial profile oscillates as cos(λ₀ t);
            // count the first two zero crossings to estimate the half period
            let proj: Vec<(f64, f64)> = run
                .states
                .iter()
                .map(|st| {
                    let p: f64 = st
                        .phi
                        .column(0)
                        .iter()
                        .zip(state.phi.column(0).iter())
                        .map(|(a, b)| a * b)
                        .sum();
                    (st.t, p)
                })
                .collect();
            let mut crossings = Vec::new();
            for w in proj.windows(2) {
                let ((t0, p0), (t1, p1)) = (w[0], w[1]);
                if p0.signum() != p1.signum() {
                    crossings.push(t0 + (t1 - t0) * p0 / (p0 - p1));
                }
            }
            assert!(crossings.len() >= 2, "mode did not oscillate");
            let freq = std::f64::consts::PI / (crossings[1] - crossings[0]);
            errs.push((freq - l0).abs());
        }
        let order = convergence_order(errs[0], errs[1]);
        assert!((1.7..=2.3).contains(&order), "observed order {order}, errors {errs:?}");
    }

    #[test]
    fn smooth_scenario_shows_second_order_convergence() {
        let params = ModelParams::new(0.75).unwrap();
        let t_end = 1.0;
        let mut snaps = Vec::new();
        for &n in &[400usize, 800, 1600] {
            let s = bump_state(6.0, n);
            let h = 6.0 / n as f64;
            let dt0: f64 = 0.25 * 6.0 / 1600.0; // shared dt so only h varies
            let steps = (t_end / dt0).round() as usize;
            let cfg = FdConfig { h_z: h, h_r: None, dt: t_end / steps as f64, steps, bc_right: RightBoundary::None, z_max: 6.0 };
            let run = fd_evolve(&s, &params, &cfg, usize::MAX).unwrap();
            snaps.push(run.states.last().unwrap().phi.clone());
        }
        // restrict finer grids to the coarse nodes: node j of level l sits at
        // index j·2^l + (2^(l−1) − 1)… staggered grids do not nest exactly;
        // compare against averaged pairs instead
        let coarse = &snaps[0];
        let avg = |fine: &Array2<f64>, factor: usize| -> Vec<f64> {
            (0..coarse.nrows())
                .map(|j| {
                    let base = j * factor;
                    (0..factor).map(|o| fine[[base + o, 0]]).sum::<f64>() / factor as f64
                })
                .collect()
        };
        let mid = avg(&snaps[1], 2);
        let fine = avg(&snaps[2], 4);
        let d1: f64 = coarse
            .column(0)
            .iter()
            .zip(&mid)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt();
        let d2: f64 = mid.iter().zip(&fine).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
        let order = convergence_order(d1, d2);
        assert!((1.7..=2.3).contains(&order), "observed order {order}");
    }
}
