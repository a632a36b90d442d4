//! Cross-validation of the spectral engine against the independent
//! finite-difference oracle.

use adskg::brane::{brane_decompose, brane_evolve_reconstruct, brane_spectrum, BraneTowerConfig};
use adskg::datum::GaussianBump;
use adskg::fd::{fd_evolve, FdConfig, RightBoundary};
use adskg::field::{FieldState, TransverseGrid, ZGrid};
use adskg::halfline::{decompose, reconstruct, standard_z_grid, TowerConfig};
use adskg::ModelParams;

fn l2_rel_diff(a: &FieldState, b: &FieldState) -> f64 {
    assert_eq!(a.phi.dim(), b.phi.dim());
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in a.phi.iter().zip(b.phi.iter()) {
        num += (x - y) * (x - y);
        den += y * y;
    }
    (num / den).sqrt()
}

#[test]
fn halfline_spectral_matches_fd() {
    let params = ModelParams::new(3.75).unwrap();
    let bump = GaussianBump { z_center: 2.5, width: 0.3, amplitude: 1.0 };
    let t_end = 2.0;

    // spectral side
    let zq = standard_z_grid(8.0, 40.0).unwrap();
    let state0 = FieldState::from_functions(
        TransverseGrid::Independent { k: 0.0 },
        zq,
        |_, zv| bump.phi0(zv),
        |_, _| 0.0,
    )
    .unwrap();
    let mut cfg = TowerConfig::new(40.0, 8.0 + t_end);
    cfg.tail_budget = 1e-6;
    let tower = decompose(&state0, &params, &cfg).unwrap();

    // FD side: far wall at 8 > 2.5 + 1.8 + 2 (no reflections reach the bump)
    let n = 2000;
    let z_fd = ZGrid::uniform_staggered(8.0, n).unwrap();
    let fd0 = FieldState::from_functions(
        TransverseGrid::Independent { k: 0.0 },
        z_fd.clone(),
        |_, zv| bump.phi0(zv),
        |_, _| 0.0,
    )
    .unwrap();
    let h = 8.0 / n as f64;
    let mut fd_cfg = FdConfig { h_z: h, h_r: None, dt: 1.0, steps: 0, bc_right: RightBoundary::None, z_max: 8.0 };
    let steps = FdConfig::steps_for(t_end, fd_cfg.cfl_limit(params.mu));
    fd_cfg.dt = t_end / steps as f64;
    fd_cfg.steps = steps;
    let run = fd_evolve(&fd0, &params, &fd_cfg, usize::MAX).unwrap();
    let fd_final = run.states.last().unwrap();

    let spectral = reconstruct(&tower, fd_final.t, z_fd).unwrap();
    let diff = l2_rel_diff(fd_final, &spectral);
    assert!(diff < 1e-3, "halfline spectral-vs-FD L2 difference {diff:.3e}");

    // FD energy stays flat through the run
    let e0 = run.energies[0];
    for &e in &run.energies {
        assert!((e - e0).abs() < 1e-6 * e0.abs());
    }
}

#[test]
fn brane_spectral_matches_fd() {
    let params = ModelParams::new(3.75).unwrap();
    let spec = brane_spectrum(&params, 40).unwrap();
    let gauss = |zv: f64| zv.powf(2.5) * ((zv - 0.5) * (zv - 0.5) / (-2.0 * 0.1 * 0.1)).exp();
    let t_end = 2.0;

    let state0 = FieldState::from_functions(
        TransverseGrid::Independent { k: 0.0 },
        spec.z_grid.clone(),
        |_, zv| gauss(zv),
        |_, _| 0.0,
    )
    .unwrap();
    let tower = brane_decompose(&state0, &spec, &BraneTowerConfig { k_keep: None, tail_budget: 1e-6 }).unwrap();

    let n = 1600;
    let z_fd = ZGrid::uniform_staggered(1.0, n).unwrap();
    let fd0 = FieldState::from_functions(
        TransverseGrid::Independent { k: 0.0 },
        z_fd.clone(),
        |_, zv| gauss(zv),
        |_, _| 0.0,
    )
    .unwrap();
    let h = 1.0 / n as f64;
    let mut fd_cfg = FdConfig { h_z: h, h_r: None, dt: 1.0, steps: 0, bc_right: RightBoundary::Robin32, z_max: 1.0 };
    let steps = FdConfig::steps_for(t_end, fd_cfg.cfl_limit(params.mu));
    fd_cfg.dt = t_end / steps as f64;
    fd_cfg.steps = steps;
    let run = fd_evolve(&fd0, &params, &fd_cfg, usize::MAX).unwrap();
    let fd_final = run.states.last().unwrap();

    let spectral = brane_evolve_reconstruct(&tower, fd_final.t, z_fd).unwrap();
    let diff = l2_rel_diff(fd_final, &spectral);
    assert!(diff < 1e-3, "brane spectral-vs-FD L2 difference {diff:.3e}");
}

#[test]
fn fd_agreement_tightens_under_refinement() {
    // data kept away from the horizon for the whole run, so the scheme's
    // reduced accuracy at the z^{λ+1/2} cusp does not cap the order
    let params = ModelParams::new(0.75).unwrap();
    let bump = GaussianBump { z_center: 3.0, width: 0.25, amplitude: 1.0 };
    let t_end = 1.0;

    let zq = standard_z_grid(6.0, 40.0).unwrap();
    let state0 = FieldState::from_functions(
        TransverseGrid::Independent { k: 0.0 },
        zq,
        |_, zv| bump.phi0(zv),
        |_, _| 0.0,
    )
    .unwrap();
    let mut cfg = TowerConfig::new(40.0, 6.0 + t_end);
    cfg.tail_budget = 1e-6;
    let tower = decompose(&state0, &params, &cfg).unwrap();

    let mut diffs = Vec::new();
    for &n in &[500usize, 1000, 2000] {
        let z_fd = ZGrid::uniform_staggered(6.0, n).unwrap();
        let fd0 = FieldState::from_functions(
            TransverseGrid::Independent { k: 0.0 },
            z_fd.clone(),
            |_, zv| bump.phi0(zv),
            |_, _| 0.0,
        )
        .unwrap();
        let h = 6.0 / n as f64;
        let mut fd_cfg = FdConfig { h_z: h, h_r: None, dt: 1.0, steps: 0, bc_right: RightBoundary::None, z_max: 6.0 };
        let steps = FdConfig::steps_for(t_end, fd_cfg.cfl_limit(params.mu));
        fd_cfg.dt = t_end / steps as f64;
        fd_cfg.steps = steps;
        let run = fd_evolve(&fd0, &params, &fd_cfg, usize::MAX).unwrap();
        let fd_final = run.states.last().unwrap();
        let spectral = reconstruct(&tower, fd_final.t, z_fd).unwrap();
        diffs.push(l2_rel_diff(fd_final, &spectral));
    }
    assert!(diffs[0] > diffs[1] && diffs[1] > diffs[2], "no monotone tightening: {diffs:?}");
    let order = (diffs[0] / diffs[2]).log2() / 2.0;
    assert!((1.7..=2.3).contains(&order), "observed order {order} from {diffs:?}");
}
