//! Lacuna and equipartition for the admissible masses, with the inadmissible
//! negative control.

use adskg::datum::AnnulusBump;
use adskg::field::{FieldState, RadialGrid, TransverseGrid, ZGrid};
use adskg::halfline::{decompose, standard_z_grid, ContinuousTower, TowerConfig};
use adskg::verify::{
    check_equipartition, check_lacuna, EvolvingField, HalflineRun, LacunaExpectation,
};
use adskg::ModelParams;

const R_SUPPORT: f64 = 1.0;
const T_PROBE: f64 = 3.0;

fn shell_tower(params: &ModelParams) -> ContinuousTower {
    let datum = AnnulusBump { r_outer: R_SUPPORT, amplitude: 1.0 };
    let kappa = datum.kappa_max();
    let z = standard_z_grid(1.1 * R_SUPPORT, kappa).unwrap();
    // the box only has to stay reflection-free for the probe window
    let r = RadialGrid::new(8.0, 512).unwrap();
    let state = FieldState::from_functions(
        TransverseGrid::Radial(r),
        z,
        |rv, zv| datum.phi0(params, rv, zv),
        |_, _| 0.0,
    )
    .unwrap();
    let mut cfg = TowerConfig::new(kappa, 6.0 + T_PROBE);
    cfg.k_keep = Some((kappa / (std::f64::consts::PI / 8.0)).ceil() as usize);
    cfg.tail_budget = 1e-6;
    decompose(&state, params, &cfg).unwrap()
}

fn probe_state(tower: &ContinuousTower, t: f64) -> FieldState {
    let z_eval = ZGrid::uniform_staggered(6.0, 384).unwrap();
    let run = HalflineRun::new(tower, z_eval).unwrap();
    run.state_at(t).unwrap()
}

#[test]
fn electromagnetic_mass_has_a_lacuna() {
    let params = ModelParams::new(0.75).unwrap(); // ν = 2
    let tower = shell_tower(&params);
    let snap = probe_state(&tower, T_PROBE);
    let report = check_lacuna(&snap, &params, R_SUPPORT, 1e-5, LacunaExpectation::Vanishes).unwrap();
    assert!(report.passed, "interior sup {:.3e}", report.measured["normalized_interior_sup"]);
}

#[test]
fn gravitational_mass_has_a_lacuna() {
    let params = ModelParams::new(3.75).unwrap(); // ν = 4
    let tower = shell_tower(&params);
    let snap = probe_state(&tower, T_PROBE);
    let report = check_lacuna(&snap, &params, R_SUPPORT, 1e-5, LacunaExpectation::Vanishes).unwrap();
    assert!(report.passed, "interior sup {:.3e}", report.measured["normalized_interior_sup"]);
}

#[test]
fn inadmissible_mass_fills_the_interior() {
    // μ = 2 gives ν = 3 (odd): no lacuna; the interior sup must stay large
    let params = ModelParams::new(2.0).unwrap();
    assert_eq!(params.nu, Some(3));
    let tower = shell_tower(&params);
    let snap = probe_state(&tower, T_PROBE);
    let report = check_lacuna(&snap, &params, R_SUPPORT, 1e-5, LacunaExpectation::Persists).unwrap();
    assert!(
        report.passed,
        "negative control: interior sup only {:.3e}",
        report.measured["normalized_interior_sup"]
    );
    assert!(report.measured["normalized_interior_sup"] > 1e-2);

    // asking for a vanishing interior at odd ν is a precondition error
    assert!(check_lacuna(&snap, &params, R_SUPPORT, 1e-5, LacunaExpectation::Vanishes).is_err());
}

#[test]
fn lacuna_probe_before_time_r_is_skipped() {
    let params = ModelParams::new(0.75).unwrap();
    let tower = shell_tower(&params);
    let snap = probe_state(&tower, 0.5);
    let report = check_lacuna(&snap, &params, R_SUPPORT, 1e-5, LacunaExpectation::Vanishes).unwrap();
    assert!(report.passed);
    assert!(report.notes.contains("skipped"));
}

#[test]
fn equipartition_after_support_radius() {
    for mu in [0.75, 3.75] {
        let params = ModelParams::new(mu).unwrap();
        let tower = shell_tower(&params);
        let z_eval = standard_z_grid(5.0, 40.0).unwrap();
        let run = HalflineRun::new(&tower, z_eval).unwrap();
        let times = [0.0, 0.4, 1.5, 2.0, 3.0];
        let report = check_equipartition(&run, R_SUPPORT, &times, 1e-5).unwrap();
        assert!(report.passed, "mu={mu}: max gap {:.3e}", report.measured["max_gap_after_R"]);
        // data at rest: all energy is potential at t = 0
        let gap0 = report.measured["gap_t0.0000"];
        assert!((gap0 - 1.0).abs() < 1e-10, "t=0 gap {gap0}");
    }
}
