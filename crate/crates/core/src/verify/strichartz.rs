//! Truncated space-time Strichartz norms, their admissibility relations,
//! and the saturation/homogeneity boundedness check.

use crate::error::{Error, Result};
use crate::field::{FieldState, TransverseGrid};
use crate::specfun::gauss_legendre_rule;

use super::{EvolvingField, VerificationReport};

/// Which admissibility relation applies. Each family pins its own weight
/// exponent; the largest lift dimension gives the general family, even ν
/// admits a 2D lift and odd ν a 3D lift with weaker weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdmissibilityFamily {
    /// 1/q + (ν+5)/r = (ν+3)/2, 1/q + (ν+4)/(2r) ≤ (ν+4)/4,
    /// weight z^{(ν+1)(1/r − 1/2)}.
    General,
    /// ν even: 1/q + 5/r = 3/2, 1/q + 2/r ≤ 1, weight z^{1/r − 1/2}.
    EvenNu,
    /// ν odd: 1/q + 6/r = 2, 1/q + 5/(2r) ≤ 5/4, weight z^{2/r − 1}.
    OddNu,
}

#[derive(Clone, Copy, Debug)]
pub struct StrichartzConfig {
    pub q: f64,
    pub r: f64,
    pub weight_exponent: f64,
    pub family: AdmissibilityFamily,
    /// nodes of the per-block Gauss rule used for the time integral
    pub nodes_per_block: usize,
}

const ADMISSIBILITY_TOL: f64 = 1e-12;

/// Validate (q, r, weight) against the selected relation for this ν.
pub fn admissibility_check(nu: u32, cfg: &StrichartzConfig) -> Result<()> {
    let (q, r, w) = (cfg.q, cfg.r, cfg.weight_exponent);
    if q < 2.0 {
        return Err(Error::Admissibility { msg: format!("q = {q} < 2") });
    }
    let nuf = nu as f64;
    let (scaling_lhs, scaling_rhs, cap_lhs, cap_rhs, weight) = match cfg.family {
        AdmissibilityFamily::General => (
            1.0 / q + (nuf + 5.0) / r,
            (nuf + 3.0) / 2.0,
            1.0 / q + (nuf + 4.0) / (2.0 * r),
            (nuf + 4.0) / 4.0,
            (nuf + 1.0) * (1.0 / r - 0.5),
        ),
        AdmissibilityFamily::EvenNu => {
            if nu % 2 != 0 {
                return Err(Error::Admissibility { msg: format!("even-nu family with nu = {nu}") });
            }
            (1.0 / q + 5.0 / r, 1.5, 1.0 / q + 2.0 / r, 1.0, 1.0 / r - 0.5)
        }
        AdmissibilityFamily::OddNu => {
            if nu % 2 != 1 {
                return Err(Error::Admissibility { msg: format!("odd-nu family with nu = {nu}") });
            }
            (1.0 / q + 6.0 / r, 2.0, 1.0 / q + 5.0 / (2.0 * r), 1.25, 2.0 / r - 1.0)
        }
    };
    if (scaling_lhs - scaling_rhs).abs() > ADMISSIBILITY_TOL {
        return Err(Error::Admissibility {
            msg: format!("scaling relation violated: {scaling_lhs} != {scaling_rhs} for (q,r)=({q},{r})"),
        });
    }
    if cap_lhs > cap_rhs + ADMISSIBILITY_TOL {
        return Err(Error::Admissibility {
            msg: format!("knapp cap violated: {cap_lhs} > {cap_rhs} for (q,r)=({q},{r})"),
        });
    }
    if (w - weight).abs() > ADMISSIBILITY_TOL {
        return Err(Error::Admissibility {
            msg: format!("weight exponent {w} does not match the family value {weight}"),
        });
    }
    Ok(())
}

/// ‖z^w Φ(t)‖_{L^r}^r over the spatial measure (4π r² dr dz radial, dz 1D).
fn spatial_lr_pow(state: &FieldState, w: f64, r_exp: f64) -> f64 {
    let mut terms = Vec::with_capacity(state.phi.len());
    match &state.transverse {
        TransverseGrid::Independent { .. } => {
            for (iz, &z) in state.z.quad.nodes.iter().enumerate() {
                let wz = state.z.quad.weights[iz];
                let v = (z.powf(w) * state.phi[[iz, 0]]).abs();
                terms.push(wz * v.powf(r_exp));
            }
        }
        TransverseGrid::Radial(g) => {
            let h = g.h();
            let r_nodes = g.nodes();
            for (iz, &z) in state.z.quad.nodes.iter().enumerate() {
                let wz = state.z.quad.weights[iz];
                for (ir, &rv) in r_nodes.iter().enumerate() {
                    let v = (z.powf(w) * state.phi[[iz, ir]]).abs();
                    terms.push(4.0 * std::f64::consts::PI * h * rv * rv * wz * v.powf(r_exp));
                }
            }
        }
    }
    crate::util::pairwise_sum(&terms)
}

/// Per-block contributions ∫_block ‖z^wΦ(t)‖_{L^r}^q dt for every config,
/// sharing one reconstruction sweep across configs. Blocks are the dyadic
/// intervals [0,1], [1,2], [2,4], … up to t_end (a power of two ≥ 1).
fn block_integrals(
    run: &dyn EvolvingField,
    cfgs: &[StrichartzConfig],
    t_end: f64,
) -> Result<Vec<Vec<f64>>> {
    let blocks = dyadic_blocks(t_end)?;
    let nodes = cfgs.iter().map(|c| c.nodes_per_block).max().unwrap_or(8);
    let (xs, ws) = gauss_legendre_rule(nodes);
    let mut out = vec![vec![0.0; blocks.len()]; cfgs.len()];
    for (ib, (a, b)) in blocks.iter().enumerate() {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, wq) in xs.iter().zip(&ws) {
            let t = mid + half * x;
            let state = run.state_at(t)?;
            for (ic, cfg) in cfgs.iter().enumerate() {
                let lr = spatial_lr_pow(&state, cfg.weight_exponent, cfg.r).powf(1.0 / cfg.r);
                out[ic][ib] += half * wq * lr.powf(cfg.q);
            }
        }
    }
    Ok(out)
}

/// Truncated norm I(T) = ( ∫₀^T ‖z^wΦ(t)‖_{L^r}^q dt )^{1/q}.
pub fn strichartz_norm(run: &dyn EvolvingField, cfg: &StrichartzConfig, t_end: f64) -> Result<f64> {
    admissibility_check(run.params().require_nu("strichartz_norm")?, cfg)?;
    let acc: f64 = block_integrals(run, std::slice::from_ref(cfg), t_end)?[0].iter().sum();
    Ok(acc.powf(1.0 / cfg.q))
}

fn dyadic_blocks(t_end: f64) -> Result<Vec<(f64, f64)>> {
    if !(t_end >= 1.0) || (t_end.log2() - t_end.log2().round()).abs() > 1e-12 {
        return Err(Error::domain("strichartz_norm", format!("T must be a power of two >= 1, got {t_end}")));
    }
    let mut blocks = vec![(0.0, 1.0)];
    let mut edge = 1.0;
    while edge < t_end - 0.5 {
        blocks.push((edge, 2.0 * edge));
        edge *= 2.0;
    }
    Ok(blocks)
}

/// Boundedness check for one or more admissible (q, r, weight) triples
/// sharing one field sweep: each truncated norm I(T) over the dyadic
/// sequence up to `t_max` must saturate (I(T_max)/I(T_max/2) − 1 below
/// `saturation_tol`), and each norm must be exactly degree-1 homogeneous
/// under data scaling, verified end-to-end against an independently
/// decomposed scaled run.
pub fn check_strichartz_bounded(
    run: &dyn EvolvingField,
    scaled_run: &dyn EvolvingField,
    scale: f64,
    cfgs: &[StrichartzConfig],
    t_max: f64,
    saturation_tol: f64,
) -> Result<VerificationReport> {
    let nu = run.params().require_nu("check_strichartz_bounded")?;
    for cfg in cfgs {
        admissibility_check(nu, cfg)?;
    }
    let mut report = VerificationReport::new("strichartz_bounded", true, saturation_tol);
    let base = block_integrals(run, cfgs, t_max)?;
    let scaled = block_integrals(scaled_run, cfgs, t_max)?;
    let mut all_saturated = true;
    let mut all_homogeneous = true;
    for (ic, cfg) in cfgs.iter().enumerate() {
        let tag = format!("q{:.3}_r{:.3}", cfg.q, cfg.r);
        let mut acc = 0.0;
        let mut norms = Vec::new();
        let mut t_edge = 1.0;
        for (ib, contrib) in base[ic].iter().enumerate() {
            acc += contrib;
            norms.push(acc.powf(1.0 / cfg.q));
            if ib > 0 {
                t_edge *= 2.0;
            }
            report = report.with(&format!("I_{tag}_T{t_edge:.0}"), *norms.last().unwrap());
        }
        let n = norms.len();
        let ratio = if n >= 2 && norms[n - 2] > 0.0 {
            norms[n - 1] / norms[n - 2] - 1.0
        } else {
            f64::INFINITY
        };
        all_saturated &= ratio < saturation_tol;
        report = report.with(&format!("saturation_{tag}"), ratio);

        let i_scaled = scaled[ic].iter().sum::<f64>().powf(1.0 / cfg.q);
        let expect = scale * norms[n - 1];
        let dev = if expect > 0.0 { (i_scaled - expect).abs() / expect } else { i_scaled.abs() };
        all_homogeneous &= dev < 1e-10;
        report = report.with(&format!("homogeneity_{tag}"), dev);
    }
    report.passed = all_saturated && all_homogeneous;
    Ok(report.note("pass = saturating truncated norms + exact linearity under data scaling"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(q: f64, r: f64, w: f64, family: AdmissibilityFamily) -> StrichartzConfig {
        StrichartzConfig { q, r, weight_exponent: w, family, nodes_per_block: 8 }
    }

    #[test]
    fn gravitational_pairs_are_admissible() {
        // ν = 4: (20/7, 20/7) with weight −3/4 in the general family,
        // (4, 4) with weight −1/4 in the even family
        admissibility_check(4, &cfg(20.0 / 7.0, 20.0 / 7.0, -0.75, AdmissibilityFamily::General)).unwrap();
        admissibility_check(4, &cfg(4.0, 4.0, -0.25, AdmissibilityFamily::EvenNu)).unwrap();
    }

    #[test]
    fn electromagnetic_pairs() {
        // ν = 2: (16/5, 16/5) with weight −9/16 (general), (4, 4) −1/4 (even)
        admissibility_check(2, &cfg(3.2, 3.2, -0.5625, AdmissibilityFamily::General)).unwrap();
        admissibility_check(2, &cfg(4.0, 4.0, -0.25, AdmissibilityFamily::EvenNu)).unwrap();
    }

    #[test]
    fn bad_pairs_rejected() {
        assert!(admissibility_check(4, &cfg(2.0, 100.0, -0.75, AdmissibilityFamily::General)).is_err());
        assert!(admissibility_check(4, &cfg(1.5, 4.0, -0.25, AdmissibilityFamily::EvenNu)).is_err());
        assert!(admissibility_check(4, &cfg(4.0, 4.0, -0.30, AdmissibilityFamily::EvenNu)).is_err());
        assert!(admissibility_check(4, &cfg(4.0, 4.0, -0.25, AdmissibilityFamily::OddNu)).is_err());
    }

    #[test]
    fn dyadic_block_structure() {
        let blocks = dyadic_blocks(8.0).unwrap();
        assert_eq!(blocks, vec![(0.0, 1.0), (1.0, 2.0), (2.0, 4.0), (4.0, 8.0)]);
        assert!(dyadic_blocks(6.0).is_err());
    }
}
