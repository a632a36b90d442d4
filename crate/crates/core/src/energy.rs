//! Grid-side energy in the first-order (α) form.
//!
//! The conserved energy contains ∫ |∂_zΦ|² + (μ/z²)|Φ|², two terms that
//! separately diverge like z^{2λ−1} pieces near the horizon and cancel.
//! The α-form integrand |∂_zΦ + (α/z)Φ|² is pointwise non-negative and
//! equal after integration by parts (α² + α = μ for α = α±), so it is what
//! the quadrature actually evaluates:
//!
//! * half-line: E = ∫ |∂_tΦ|² + |∇_xΦ|² + |(∂_z + α₊/z)Φ|², boundary-free;
//! * brane (z ∈ (0,1]): the α-form picks up a trace term at z = 1. With
//!   α₋ = −1/2 − λ,
//!   E₁ = ∫ |∂_tΦ|² + |∇_xΦ|² + |(∂_z + α₋/z)Φ|² + (λ+2)∫|Φ(·,1)|²,
//!   and every component is non-negative for all λ > 0 (with α₊ the trace
//!   coefficient 2 − λ would go negative past λ = 2).
//!
//! Radial transverse bookkeeping uses χ = rΦ, for which
//! ∫_{ℝ³} |∇_xΦ|² dx = 4π ∫ |∂_rχ|² dr (the cross terms integrate away),
//! so the 3D energy is 4π times a Cartesian 2D energy of χ; the r-derivative
//! piece is summed in the sine basis where it is diagonal.

use ndarray::Array2;
use serde::Serialize;

use crate::dst::DstPlan;
use crate::error::{Error, Result};
use crate::field::{FieldState, TransverseGrid, ZGridKind};
use crate::params::ModelParams;
use crate::specfun::gauss_legendre_rule;
use crate::util::pairwise_sum;

/// Which boundary-value problem the state belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Halfline,
    Brane,
}

/// Energy components; all non-negative, `total` is their sum.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct EnergyBreakdown {
    pub kinetic: f64,
    pub potential_transverse: f64,
    pub potential_z: f64,
    pub boundary: f64,
    pub total: f64,
}

impl EnergyBreakdown {
    pub fn assemble(kinetic: f64, potential_transverse: f64, potential_z: f64, boundary: f64) -> Self {
        EnergyBreakdown {
            kinetic,
            potential_transverse,
            potential_z,
            boundary,
            total: kinetic + potential_transverse + potential_z + boundary,
        }
    }

    pub fn potential(&self) -> f64 {
        self.potential_transverse + self.potential_z + self.boundary
    }
}

/// Quadrature of the α-form energy of a sampled state.
pub fn grid_energy(state: &FieldState, params: &ModelParams, geometry: Geometry) -> Result<EnergyBreakdown> {
    state.validate()?;
    let (alpha, trace_coeff) = match geometry {
        Geometry::Halfline => (params.alpha_plus, 0.0),
        Geometry::Brane => {
            // the trace algebra below assumes the wall sits exactly at z = 1
            if (state.z.quad.domain_end - 1.0).abs() > 1e-12 {
                return Err(Error::precondition(
                    "grid_energy",
                    format!("brane energy needs a grid ending at z = 1, got {}", state.z.quad.domain_end),
                ));
            }
            (params.alpha_minus, params.lambda_index + 2.0)
        }
    };

    let n_z = state.z.len();
    let n_r = state.transverse.n_cols();
    let z_nodes = &state.z.quad.nodes;
    let z_weights = &state.z.quad.weights;

    // chi = r·phi for radial runs (phi itself when x-independent)
    let (chi, chi_t, r_measure) = match &state.transverse {
        TransverseGrid::Independent { .. } => (state.phi.clone(), state.dphi.clone(), vec![1.0]),
        TransverseGrid::Radial(g) => {
            let r = g.nodes();
            let mut chi = state.phi.clone();
            let mut chi_t = state.dphi.clone();
            for iz in 0..n_z {
                for ir in 0..n_r {
                    chi[[iz, ir]] *= r[ir];
                    chi_t[[iz, ir]] *= r[ir];
                }
            }
            let w = 4.0 * std::f64::consts::PI * g.h();
            (chi, chi_t, vec![w; n_r])
        }
    };

    let dchi_dz = differentiate_z(&chi, state)?;

    let mut kin = Vec::with_capacity(n_z * n_r);
    let mut zee = Vec::with_capacity(n_z * n_r);
    for iz in 0..n_z {
        let z = z_nodes[iz];
        let wz = z_weights[iz];
        for ir in 0..n_r {
            let wr = r_measure[ir.min(r_measure.len() - 1)];
            let ct = chi_t[[iz, ir]];
            kin.push(wz * wr * ct * ct);
            let az = dchi_dz[[iz, ir]] + alpha / z * chi[[iz, ir]];
            zee.push(wz * wr * az * az);
        }
    }
    let kinetic = pairwise_sum(&kin);
    let potential_z = pairwise_sum(&zee);

    // transverse derivative: diagonal in the sine basis
    let potential_transverse = match &state.transverse {
        TransverseGrid::Independent { k } => {
            let terms: Vec<f64> = (0..n_z)
                .map(|iz| z_weights[iz] * k * k * chi[[iz, 0]] * chi[[iz, 0]])
                .collect();
            pairwise_sum(&terms)
        }
        TransverseGrid::Radial(g) => {
            let plan = DstPlan::new(g.dst_size);
            let mode_weight = 4.0 * std::f64::consts::PI * 0.5 * g.r_max;
            let mut terms = Vec::with_capacity(n_z * (g.dst_size - 1));
            let mut row = vec![0.0; g.n_nodes()];
            for iz in 0..n_z {
                for ir in 0..g.n_nodes() {
                    row[ir] = chi[[iz, ir]];
                }
                let coeffs = plan.analyze(&row);
                let wz = z_weights[iz];
                for (j, &c) in coeffs.iter().enumerate() {
                    let k = g.wavenumber(j);
                    terms.push(wz * mode_weight * k * k * c * c);
                }
            }
            pairwise_sum(&terms)
        }
    };

    let boundary = if trace_coeff > 0.0 {
        let trace = extrapolate_to_end(&chi, state)?;
        let terms: Vec<f64> = trace
            .iter()
            .enumerate()
            .map(|(ir, &v)| trace_coeff * r_measure[ir.min(r_measure.len() - 1)] * v * v)
            .collect();
        pairwise_sum(&terms)
    } else {
        0.0
    };

    Ok(EnergyBreakdown::assemble(kinetic, potential_transverse, potential_z, boundary))
}

/// ∂_z of sampled columns. Gauss-Legendre panels use the spectral
/// differentiation matrix of their own nodes; uniform grids use central
/// differences (second order, one-sided at the ends).
fn differentiate_z(f: &Array2<f64>, state: &FieldState) -> Result<Array2<f64>> {
    let n_z = state.z.len();
    let n_r = f.ncols();
    let mut out = Array2::zeros((n_z, n_r));
    match &state.z.kind {
        ZGridKind::CompositeGl { nodes_per_panel, edges } => {
            let nodes_per_panel = *nodes_per_panel;
            let panels = edges.len() - 1;
            if n_z != panels * nodes_per_panel {
                return Err(Error::shape("differentiate_z", "grid size does not match the panel layout"));
            }
            let d_ref = gl_diff_matrix(nodes_per_panel);
            for p in 0..panels {
                let scale = 2.0 / (edges[p + 1] - edges[p]);
                let base = p * nodes_per_panel;
                for ir in 0..n_r {
                    for i in 0..nodes_per_panel {
                        let mut acc = 0.0;
                        for j in 0..nodes_per_panel {
                            acc += d_ref[i][j] * f[[base + j, ir]];
                        }
                        out[[base + i, ir]] = scale * acc;
                    }
                }
            }
        }
        ZGridKind::UniformStaggered => {
            let h = state.z.quad.domain_end / n_z as f64;
            for ir in 0..n_r {
                for iz in 0..n_z {
                    out[[iz, ir]] = if iz == 0 {
                        (-3.0 * f[[0, ir]] + 4.0 * f[[1, ir]] - f[[2, ir]]) / (2.0 * h)
                    } else if iz == n_z - 1 {
                        (3.0 * f[[n_z - 1, ir]] - 4.0 * f[[n_z - 2, ir]] + f[[n_z - 3, ir]]) / (2.0 * h)
                    } else {
                        (f[[iz + 1, ir]] - f[[iz - 1, ir]]) / (2.0 * h)
                    };
                }
            }
        }
    }
    Ok(out)
}

/// Values at z = domain_end by extrapolation from the last panel (or last
/// three uniform nodes): the brane trace.
pub(crate) fn extrapolate_to_end(f: &Array2<f64>, state: &FieldState) -> Result<Vec<f64>> {
    let n_z = state.z.len();
    let n_r = f.ncols();
    let mut out = vec![0.0; n_r];
    match &state.z.kind {
        ZGridKind::CompositeGl { nodes_per_panel, .. } => {
            let nodes_per_panel = *nodes_per_panel;
            let (xs, _) = gauss_legendre_rule(nodes_per_panel);
            let w = lagrange_weights_at(&xs, 1.0);
            let base = n_z - nodes_per_panel;
            for ir in 0..n_r {
                let mut acc = 0.0;
                for j in 0..nodes_per_panel {
                    acc += w[j] * f[[base + j, ir]];
                }
                out[ir] = acc;
            }
        }
        ZGridKind::UniformStaggered => {
            // quadratic through the last three midpoints, evaluated at the wall
            for ir in 0..n_r {
                let (a, b, c) = (f[[n_z - 3, ir]], f[[n_z - 2, ir]], f[[n_z - 1, ir]]);
                out[ir] = 0.375 * a - 1.25 * b + 1.875 * c;
            }
        }
    }
    Ok(out)
}

/// Spectral differentiation matrix on arbitrary nodes (barycentric form).
fn gl_diff_matrix(n: usize) -> Vec<Vec<f64>> {
    let (xs, _) = gauss_legendre_rule(n);
    let mut w = vec![1.0; n];
    for j in 0..n {
        for k in 0..n {
            if k != j {
                w[j] /= xs[j] - xs[k];
            }
        }
    }
    let mut d = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut diag = 0.0;
        for j in 0..n {
            if i != j {
                d[i][j] = (w[j] / w[i]) / (xs[i] - xs[j]);
                diag -= d[i][j];
            }
        }
        d[i][i] = diag;
    }
    d
}

/// Lagrange interpolation weights for evaluating at point `x` from `nodes`.
fn lagrange_weights_at(nodes: &[f64], x: f64) -> Vec<f64> {
    let n = nodes.len();
    let mut w = vec![1.0; n];
    for j in 0..n {
        for k in 0..n {
            if k != j {
                w[j] *= (x - nodes[k]) / (nodes[j] - nodes[k]);
            }
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ZGrid;

    #[test]
    fn zero_state_has_zero_energy() {
        let params = ModelParams::new(1.0).unwrap();
        let z = ZGrid::composite_gl(4.0, 0.25, 16).unwrap();
        let s = FieldState::from_functions(TransverseGrid::Independent { k: 0.0 }, z, |_, _| 0.0, |_, _| 0.0).unwrap();
        let e = grid_energy(&s, &params, Geometry::Halfline).unwrap();
        assert_eq!(e.total, 0.0);
    }

    #[test]
    fn static_profile_has_zero_kinetic_energy() {
        let params = ModelParams::new(3.75).unwrap();
        let z = ZGrid::composite_gl(10.0, 0.1, 16).unwrap();
        let s = FieldState::from_functions(
            TransverseGrid::Independent { k: 0.0 },
            z,
            |_, zv| zv.powf(2.5) * (-zv * zv).exp(),
            |_, _| 0.0,
        )
        .unwrap();
        let e = grid_energy(&s, &params, Geometry::Halfline).unwrap();
        assert_eq!(e.kinetic, 0.0);
        assert!(e.potential_z > 0.0);
        assert!((e.total - e.kinetic - e.potential_transverse - e.potential_z - e.boundary).abs() <= 1e-12 * e.total);
    }

    #[test]
    fn alpha_form_matches_analytic_energy_for_power_profile() {
        // Φ = z^{λ+1/2} e^{−z²}: (∂_z + α₊/z)Φ = (2λ z^{λ−1/2} − 2 z^{λ+3/2}) e^{−z²};
        // ∫ (…)² has a closed form via Γ functions. λ = 1 keeps it simple:
        // ∫ (2 z^{1/2} − 2 z^{5/2})² e^{−2z²} dz
        //  = 4∫ (z − 2z³ + z⁵) e^{−2z²} dz = 4[1/4 − 2·(1/8) + 1/8·… ]
        let params = ModelParams::new(0.75).unwrap(); // λ = 1
        let z = ZGrid::composite_gl(8.0, 0.05, 16).unwrap();
        let s = FieldState::from_functions(
            TransverseGrid::Independent { k: 0.0 },
            z,
            |_, zv| zv.powf(1.5) * (-zv * zv).exp(),
            |_, _| 0.0,
        )
        .unwrap();
        let e = grid_energy(&s, &params, Geometry::Halfline).unwrap();
        // ∫ z e^{−2z²} = 1/4, ∫ z³ e^{−2z²} = 1/8, ∫ z⁵ e^{−2z²} = 1/8
        let exact = 4.0 * (0.25 - 2.0 * 0.125 + 0.125);
        assert!((e.potential_z - exact).abs() / exact < 1e-9, "{} vs {exact}", e.potential_z);
    }

    #[test]
    fn uniform_grid_energy_close_to_gl_energy() {
        let params = ModelParams::new(0.75).unwrap();
        let f = |zv: f64| crate::datum::bump((zv - 2.0) / 1.2);
        let zg = ZGrid::composite_gl(6.0, 0.05, 16).unwrap();
        let su = FieldState::from_functions(TransverseGrid::Independent { k: 0.0 }, zg, |_, zv| f(zv), |_, _| 0.0).unwrap();
        let e_gl = grid_energy(&su, &params, Geometry::Halfline).unwrap();
        let zu = ZGrid::uniform_staggered(6.0, 3000).unwrap();
        let sf = FieldState::from_functions(TransverseGrid::Independent { k: 0.0 }, zu, |_, zv| f(zv), |_, _| 0.0).unwrap();
        let e_u = grid_energy(&sf, &params, Geometry::Halfline).unwrap();
        assert!((e_u.potential_z - e_gl.potential_z).abs() / e_gl.potential_z < 1e-4,
            "{} vs {}", e_u.potential_z, e_gl.potential_z);
    }

    #[test]
    fn brane_energy_requires_unit_slab() {
        let params = ModelParams::new(3.75).unwrap();
        let z = ZGrid::composite_gl(2.0, 0.1, 16).unwrap();
        let s = FieldState::from_functions(TransverseGrid::Independent { k: 0.0 }, z, |_, zv| zv, |_, _| 0.0).unwrap();
        assert!(grid_energy(&s, &params, Geometry::Brane).is_err());
    }
}
