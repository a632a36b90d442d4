//! Shared transverse stage of the two decompositions: sine analysis of
//! χ = rΦ for radial runs, identity for x-independent runs.

use ndarray::Array2;

use crate::dst::DstPlan;
use crate::error::{Error, Result};
use crate::field::{FieldState, TransverseGrid};

pub(crate) struct TransverseCoeffs {
    /// χ-hat for Φ, layout [n_z, n_k]
    pub chi0: Array2<f64>,
    /// χ-hat for ∂_tΦ
    pub chi1: Array2<f64>,
    pub k_grid: Vec<f64>,
    /// exact relative sine-mass fraction discarded by the k truncation
    pub tail_k: f64,
}

pub(crate) fn analyze(state: &FieldState, k_keep: Option<usize>) -> Result<TransverseCoeffs> {
    match &state.transverse {
        TransverseGrid::Independent { k } => Ok(TransverseCoeffs {
            chi0: state.phi.clone(),
            chi1: state.dphi.clone(),
            k_grid: vec![*k],
            tail_k: 0.0,
        }),
        TransverseGrid::Radial(g) => {
            let peak = state.phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let edge = state
                .phi
                .column(g.n_nodes() - 1)
                .iter()
                .chain(state.dphi.column(g.n_nodes() - 1).iter())
                .fold(0.0f64, |m, v| m.max(v.abs()));
            if peak > 0.0 && edge > 1e-10 * peak {
                return Err(Error::precondition(
                    "decompose",
                    format!("data not compactly supported: |phi| = {edge:.3e} at the largest r node"),
                ));
            }
            let n_full = g.n_nodes();
            let keep = k_keep.unwrap_or(n_full).min(n_full);
            let plan = DstPlan::new(g.dst_size);
            let r_nodes = g.nodes();
            let n_z = state.z.len();
            let mut chi0 = Array2::zeros((n_z, keep));
            let mut chi1 = Array2::zeros((n_z, keep));
            let mut kept_mass = 0.0;
            let mut cut_mass = 0.0;
            let mut row_buf = vec![0.0; n_full];
            for iz in 0..n_z {
                let wz = state.z.quad.weights[iz];
                for (src, dst) in [(&state.phi, &mut chi0), (&state.dphi, &mut chi1)] {
                    for ir in 0..n_full {
                        row_buf[ir] = r_nodes[ir] * src[[iz, ir]];
                    }
                    let coeffs = plan.analyze(&row_buf);
                    for (j, &c) in coeffs.iter().enumerate() {
                        if j < keep {
                            dst[[iz, j]] = c;
                            kept_mass += wz * c * c;
                        } else {
                            cut_mass += wz * c * c;
                        }
                    }
                }
            }
            let k_grid: Vec<f64> = (0..keep).map(|j| g.wavenumber(j)).collect();
            let total = kept_mass + cut_mass;
            let tail_k = if total > 0.0 { cut_mass / total } else { 0.0 };
            Ok(TransverseCoeffs { chi0, chi1, k_grid, tail_k })
        }
    }
}

/// Inverse of the transverse stage for synthesised k-coefficient rows:
/// turns [n_z, n_k] arrays back into Φ samples on the radial grid.
pub(crate) fn synthesize(
    transverse: &TransverseGrid,
    hat: &Array2<f64>,
) -> Result<Array2<f64>> {
    match transverse {
        TransverseGrid::Independent { .. } => Ok(hat.clone()),
        TransverseGrid::Radial(g) => {
            let plan = DstPlan::new(g.dst_size);
            let r_nodes = g.nodes();
            let n_z = hat.nrows();
            let n_r = r_nodes.len();
            let mut out = Array2::zeros((n_z, n_r));
            for iz in 0..n_z {
                let coeffs: Vec<f64> = hat.row(iz).to_vec();
                let chi = plan.synthesize(&coeffs);
                for ir in 0..n_r {
                    out[[iz, ir]] = chi[ir] / r_nodes[ir];
                }
            }
            Ok(out)
        }
    }
}
