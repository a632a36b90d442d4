//! Builds towers from scenarios, executes checks, writes artifacts.

use std::path::Path;

use adskg::brane::{
    brane_decompose, brane_spectrum, BraneSpectrum, BraneTower, BraneTowerConfig,
};
use adskg::datum;
use adskg::energy::{grid_energy, Geometry as CoreGeometry};
use adskg::error::{Error, Result};
use adskg::fd::{fd_evolve, FdConfig, RightBoundary};
use adskg::field::{FieldState, RadialGrid, TransverseGrid, ZGrid};
use adskg::halfline::{decompose, standard_z_grid, ContinuousTower, TowerConfig};
use adskg::verify::{
    check_conservation, check_equipartition, check_finite_speed, check_lacuna,
    check_strichartz_bounded, fit_decay, lift_residual, track_packet, weighted_sup_series,
    AdmissibilityFamily, BraneRun, EvolvingField, FitWindow, HalflineRun, LacunaExpectation,
    LiftConfig, PacketWindows, StrichartzConfig, VerificationReport,
};
use adskg::ModelParams;

use crate::csvio;
use crate::scenario::{
    CheckSpec, DatumSpec, EvalGridKind, Geometry, LacunaExpect, Scenario, StrichartzFamily,
    TransverseSpec,
};

pub struct RunSummary {
    pub scenario_name: String,
    pub params: ModelParams,
    pub reports: Vec<VerificationReport>,
}

impl RunSummary {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn report(&self, name: &str) -> Option<&VerificationReport> {
        self.reports.iter().find(|r| r.check_name == name)
    }
}

/// splitmix64; deterministic coefficients for the random datum.
fn splitmix(state: &mut u64) -> f64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
}

/// Everything a scenario needs at run time.
pub struct Built {
    pub scenario: Scenario,
    pub params: ModelParams,
    pub tower: Tower,
    pub state0: FieldState,
    /// amplitude-doubled twin for homogeneity checks (built on demand)
    scale_factor: f64,
}

pub enum Tower {
    Halfline(ContinuousTower),
    Brane(Box<BraneTower>),
}

impl Built {
    pub fn geometry(&self) -> CoreGeometry {
        match self.tower {
            Tower::Halfline(_) => CoreGeometry::Halfline,
            Tower::Brane(_) => CoreGeometry::Brane,
        }
    }
}

fn datum_closures(
    scenario: &Scenario,
    params: &ModelParams,
    spectrum: Option<&BraneSpectrum>,
    seed: u64,
    scale: f64,
) -> Result<(Box<dyn Fn(f64, f64) -> f64>, Box<dyn Fn(f64, f64) -> f64>)> {
    let p = *params;
    Ok(match &scenario.datum {
        DatumSpec::GaussianBump { z_center, width, amplitude } => {
            let g = datum::GaussianBump { z_center: *z_center, width: *width, amplitude: amplitude * scale };
            (Box::new(move |_, z| g.phi0(z)), Box::new(|_, _| 0.0))
        }
        DatumSpec::AnnulusBump { r_outer, amplitude } => {
            let a = datum::AnnulusBump { r_outer: *r_outer, amplitude: amplitude * scale };
            (Box::new(move |r, z| a.phi0(&p, r, z)), Box::new(|_, _| 0.0))
        }
        DatumSpec::RadialGaussian { sigma, amplitude } => {
            let g = datum::RadialGaussian { sigma: *sigma, amplitude: amplitude * scale };
            (Box::new(move |r, z| g.phi0(&p, r, z)), Box::new(|_, _| 0.0))
        }
        DatumSpec::SlabGaussian { z_center, z_width, r_width, amplitude } => {
            let g = datum::SlabGaussian {
                z_center: *z_center,
                z_width: *z_width,
                r_width: *r_width,
                amplitude: amplitude * scale,
            };
            (Box::new(move |r, z| g.phi0(&p, r, z)), Box::new(|_, _| 0.0))
        }
        DatumSpec::HankelSelfReciprocal => (
            Box::new(move |_, z| scale * datum::SelfReciprocal::phi0(&p, z)),
            Box::new(|_, _| 0.0),
        ),
        DatumSpec::Packet { z0, kappa, sigma } => {
            let pk = datum::Packet { z0: *z0, kappa: *kappa, sigma: *sigma };
            let pk2 = datum::Packet { z0: *z0, kappa: *kappa, sigma: *sigma };
            (
                Box::new(move |_, z| scale * pk.phi0(z)),
                Box::new(move |_, z| scale * pk2.phi1(z)),
            )
        }
        DatumSpec::PureMode { n, r_width } => {
            let spec = spectrum
                .ok_or_else(|| Error::Config { msg: "pure_mode needs a brane spectrum".into() })?
                .clone();
            let n = *n;
            let r_width = *r_width;
            if n >= spec.count() {
                return Err(Error::Config { msg: format!("pure_mode index {n} out of range") });
            }
            (
                Box::new(move |r, z| {
                    let radial = match r_width {
                        Some(w) => (-0.5 * r * r / (w * w)).exp(),
                        None => 1.0,
                    };
                    scale * radial * spec.eval_mode(n, z).unwrap_or(0.0)
                }),
                Box::new(|_, _| 0.0),
            )
        }
        DatumSpec::RandomSmooth { modes, amplitude } => {
            let mut state = seed ^ 0xabcdef;
            let coeffs: Vec<f64> = (0..*modes).map(|_| splitmix(&mut state)).collect();
            let amp = amplitude * scale;
            let hp = p.horizon_power();
            // random polynomial in rho^2 under a Gaussian envelope: smooth,
            // rapidly decaying transform, reproducible from the seed
            (
                Box::new(move |r, z| {
                    let rho2 = r * r + z * z;
                    let poly: f64 = coeffs
                        .iter()
                        .enumerate()
                        .map(|(j, c)| c * (rho2 / 2.0).powi(j as i32) / (1..=j).product::<usize>().max(1) as f64)
                        .sum();
                    amp * z.powf(hp) * (-rho2).exp() * poly
                }),
                Box::new(|_, _| 0.0),
            )
        }
    })
}

/// Decompose the scenario's datum into its tower.
pub fn build(scenario: &Scenario, seed_override: Option<u64>) -> Result<Built> {
    build_scaled(scenario, seed_override, 1.0)
}

pub fn build_scaled(scenario: &Scenario, seed_override: Option<u64>, scale: f64) -> Result<Built> {
    scenario.validate().map_err(|msg| Error::Config { msg })?;
    let params = scenario.mass.params()?;
    let seed = seed_override.or(scenario.seed).unwrap_or(0);

    let transverse = match scenario.transverse {
        TransverseSpec::Independent { k } => TransverseGrid::Independent { k },
        TransverseSpec::Radial { r_max, dst_size, .. } => {
            TransverseGrid::Radial(RadialGrid::new(r_max, dst_size)?)
        }
    };

    match scenario.geometry {
        Geometry::Halfline => {
            let m_max = scenario.grids.m_max.expect("validated");
            let reach = scenario.grids.reach.expect("validated");
            let z = standard_z_grid(scenario.grids.z_quad_max, m_max)?;
            let (phi0, phi1) = datum_closures(scenario, &params, None, seed, scale)?;
            let state0 = FieldState::from_functions(transverse, z, |r, zv| phi0(r, zv), |r, zv| phi1(r, zv))?;
            let mut cfg = TowerConfig::new(m_max, reach);
            cfg.tail_budget = scenario.grids.tail_budget;
            if let TransverseSpec::Radial { r_max, k_max, .. } = scenario.transverse {
                cfg.k_keep = Some(((k_max * r_max / std::f64::consts::PI).ceil() as usize).max(1));
            }
            let tower = decompose(&state0, &params, &cfg)?;
            Ok(Built {
                scenario: scenario.clone(),
                params,
                tower: Tower::Halfline(tower),
                state0,
                scale_factor: scale,
            })
        }
        Geometry::Brane => {
            let modes = scenario.grids.modes.expect("validated");
            let spectrum = brane_spectrum(&params, modes)?;
            let (phi0, phi1) = datum_closures(scenario, &params, Some(&spectrum), seed, scale)?;
            let state0 = FieldState::from_functions(
                transverse,
                spectrum.z_grid.clone(),
                |r, zv| phi0(r, zv),
                |r, zv| phi1(r, zv),
            )?;
            let cfg = BraneTowerConfig {
                k_keep: match scenario.transverse {
                    TransverseSpec::Radial { r_max, k_max, .. } => {
                        Some(((k_max * r_max / std::f64::consts::PI).ceil() as usize).max(1))
                    }
                    TransverseSpec::Independent { .. } => None,
                },
                tail_budget: scenario.grids.tail_budget,
            };
            let tower = brane_decompose(&state0, &spectrum, &cfg)?;
            Ok(Built {
                scenario: scenario.clone(),
                params,
                tower: Tower::Brane(Box::new(tower)),
                state0,
                scale_factor: scale,
            })
        }
    }
}

impl Built {
    /// Evaluation grid per the scenario (uniform) or forced quadrature.
    fn eval_grid(&self, kind: EvalGridKind) -> Result<ZGrid> {
        let g = &self.scenario.grids;
        match kind {
            EvalGridKind::Uniform => ZGrid::uniform_staggered(g.z_eval_max, g.z_eval_points),
            EvalGridKind::Quadrature => {
                let m_max = match &self.tower {
                    Tower::Halfline(t) => g.m_max.unwrap_or(t.m_grid.last().copied().unwrap_or(8.0)),
                    Tower::Brane(t) => *t.spectrum.eigenvalues.last().unwrap(),
                };
                let width = 0.5f64.min(std::f64::consts::PI / (4.0 * m_max));
                ZGrid::composite_gl(g.z_eval_max, width, 16)
            }
        }
    }

    fn run(&self, kind: EvalGridKind) -> Result<Box<dyn EvolvingField + '_>> {
        let z = self.eval_grid(kind)?;
        Ok(match &self.tower {
            Tower::Halfline(t) => Box::new(HalflineRun::new(t, z)?),
            Tower::Brane(t) => Box::new(BraneRun::new(t, z)?),
        })
    }

    pub fn spectral_energy(&self, t: f64) -> adskg::energy::EnergyBreakdown {
        match &self.tower {
            Tower::Halfline(tw) => tw.spectral_energy(t),
            Tower::Brane(tw) => tw.spectral_energy(t),
        }
    }
}

/// Execute every check in the scenario.
pub fn run_checks(built: &Built, seed_override: Option<u64>) -> Result<RunSummary> {
    let mut reports = Vec::new();
    for check in &built.scenario.checks {
        reports.push(run_check(built, check, seed_override)?);
    }
    Ok(RunSummary {
        scenario_name: built.scenario.name.clone(),
        params: built.params,
        reports,
    })
}

fn run_check(built: &Built, check: &CheckSpec, seed_override: Option<u64>) -> Result<VerificationReport> {
    let params = built.params;
    match check {
        CheckSpec::Conservation { tolerance } => {
            let run = built.run(EvalGridKind::Quadrature)?;
            check_conservation(run.as_ref(), &built.scenario.times, *tolerance)
        }
        CheckSpec::FiniteSpeed { tolerance, support_z_max, support_r_max, probe_time, slope, expect_contained } => {
            let run = built.run(EvalGridKind::Uniform)?;
            let state = run.state_at(*probe_time)?;
            check_finite_speed(&state, *support_z_max, *support_r_max, *slope, *tolerance, *expect_contained)
        }
        CheckSpec::Lacuna { tolerance, support_radius, probe_time, expect } => {
            let run = built.run(EvalGridKind::Uniform)?;
            let state = run.state_at(*probe_time)?;
            let expect = match expect {
                LacunaExpect::Vanishes => LacunaExpectation::Vanishes,
                LacunaExpect::Persists => LacunaExpectation::Persists,
            };
            check_lacuna(&state, &params, *support_radius, *tolerance, expect)
        }
        CheckSpec::Equipartition { tolerance, support_radius } => {
            let run = built.run(EvalGridKind::Quadrature)?;
            check_equipartition(run.as_ref(), *support_radius, &built.scenario.times, *tolerance)
        }
        CheckSpec::DecayFit { window, expected_exponent, band, min_r_squared, weight_exponent } => {
            let run = built.run(EvalGridKind::Uniform)?;
            let weight = weight_exponent.unwrap_or(-(params.lambda_index + 0.5));
            let values = weighted_sup_series(run.as_ref(), &built.scenario.times, weight)?;
            let fit = fit_decay(
                &built.scenario.times,
                &values,
                FitWindow { t_min: window.0, t_max: window.1 },
            )?;
            let in_band = (fit.exponent - expected_exponent).abs() <= *band;
            let good_fit = fit.r_squared >= *min_r_squared;
            Ok(VerificationReport::new("decay_fit", in_band && good_fit, *band)
                .with("exponent", fit.exponent)
                .with("expected_exponent", *expected_exponent)
                .with("exponent_stderr", fit.exponent_stderr)
                .with("r_squared", fit.r_squared)
                .with("weight_exponent", weight)
                .note(format!("log-log fit over t in [{}, {}]", window.0, window.1)))
        }
        CheckSpec::Strichartz { pairs, t_max, saturation_tol } => {
            let cfgs: Vec<StrichartzConfig> = pairs
                .iter()
                .map(|pr| StrichartzConfig {
                    q: pr.q,
                    r: pr.r,
                    weight_exponent: pr.weight_exponent,
                    family: match pr.family {
                        StrichartzFamily::General => AdmissibilityFamily::General,
                        StrichartzFamily::EvenNu => AdmissibilityFamily::EvenNu,
                        StrichartzFamily::OddNu => AdmissibilityFamily::OddNu,
                    },
                    nodes_per_block: 6,
                })
                .collect();
            let run = built.run(EvalGridKind::Uniform)?;
            let scale = 2.0;
            let scaled = build_scaled(&built.scenario, seed_override, built.scale_factor * scale)?;
            let scaled_run = scaled.run(EvalGridKind::Uniform)?;
            check_strichartz_bounded(run.as_ref(), scaled_run.as_ref(), scale, &cfgs, *t_max, *saturation_tol)
        }
        CheckSpec::PacketMirror { tolerance, incoming, outgoing, expected_bounce, bounce_band } => {
            let run = built.run(EvalGridKind::Uniform)?;
            let windows = PacketWindows { incoming: *incoming, outgoing: *outgoing, min_peak_fraction: 0.2 };
            let (track, mut report) = track_packet(run.as_ref(), &built.scenario.times, &windows, *tolerance)?;
            let bounce_ok = (track.bounce_time - expected_bounce).abs() <= *bounce_band;
            let energy_ok = track.energy_drift < 1e-8;
            report.passed = report.passed && bounce_ok && energy_ok;
            Ok(report.with("expected_bounce", *expected_bounce))
        }
        CheckSpec::LiftResidual { t, dt, window, tolerance } => {
            let g = &built.scenario.grids;
            let mut residuals = Vec::new();
            for level in 0..2u32 {
                let refine = 2usize.pow(level);
                let z = ZGrid::uniform_staggered(g.z_eval_max, g.z_eval_points * refine)?;
                let run: Box<dyn EvolvingField> = match &built.tower {
                    Tower::Halfline(tw) => Box::new(HalflineRun::new(tw, z)?),
                    Tower::Brane(_) => {
                        return Err(Error::precondition("lift_residual", "halfline check"));
                    }
                };
                let dt_l = dt / refine as f64;
                let states = [run.state_at(t - dt_l)?, run.state_at(*t)?, run.state_at(t + dt_l)?];
                let cfg = LiftConfig { rho_window: *window, tolerance: *tolerance };
                let rep = lift_residual(&states, &params, &cfg)?;
                residuals.push(rep.measured["relative_residual"]);
            }
            let gain = residuals[0] / residuals[1].max(1e-300);
            let passed = residuals[0] < *tolerance && (2.5..=6.0).contains(&gain);
            Ok(VerificationReport::new("lift_residual", passed, *tolerance)
                .with("relative_residual", residuals[0])
                .with("refined_residual", residuals[1])
                .with("refinement_gain", gain)
                .note("pass = residual below tolerance and ~4x drop under mesh halving"))
        }
        CheckSpec::FdCompare { t_end, n_z, tolerance } => fd_compare(built, *t_end, *n_z, *tolerance, seed_override),
        CheckSpec::FdConvergence { t_end, levels, order_range } => {
            fd_convergence(built, *t_end, levels, *order_range, seed_override)
        }
    }
}

/// Sample the scenario datum on a staggered grid for the FD oracle.
fn fd_initial_state(built: &Built, n_z: usize, seed_override: Option<u64>) -> Result<FieldState> {
    let z_max = match built.geometry() {
        CoreGeometry::Halfline => built.scenario.grids.z_eval_max,
        CoreGeometry::Brane => 1.0,
    };
    let z = ZGrid::uniform_staggered(z_max, n_z)?;
    let params = built.params;
    let spectrum = match &built.tower {
        Tower::Brane(t) => Some(t.spectrum.clone()),
        Tower::Halfline(_) => None,
    };
    let seed = seed_override.or(built.scenario.seed).unwrap_or(0);
    let (phi0, phi1) = datum_closures(&built.scenario, &params, spectrum.as_ref(), seed, built.scale_factor)?;
    FieldState::from_functions(
        TransverseGrid::Independent { k: 0.0 },
        z,
        |r, zv| phi0(r, zv),
        |r, zv| phi1(r, zv),
    )
}

fn fd_run_to(built: &Built, n_z: usize, t_end: f64, seed_override: Option<u64>) -> Result<FieldState> {
    if !matches!(built.state0.transverse, TransverseGrid::Independent { .. }) {
        return Err(Error::precondition("fd_compare", "the FD oracle cross-check runs x-independent scenarios"));
    }
    let state0 = fd_initial_state(built, n_z, seed_override)?;
    let z_max = state0.z.quad.domain_end;
    let h = z_max / n_z as f64;
    let mut cfg = FdConfig {
        h_z: h,
        h_r: None,
        dt: 1.0,
        steps: 0,
        bc_right: match built.geometry() {
            CoreGeometry::Halfline => RightBoundary::None,
            CoreGeometry::Brane => RightBoundary::Robin32,
        },
        z_max,
    };
    let steps = FdConfig::steps_for(t_end, cfg.cfl_limit(built.params.mu));
    cfg.dt = t_end / steps as f64;
    cfg.steps = steps;
    let run = fd_evolve(&state0, &built.params, &cfg, usize::MAX)?;
    Ok(run.states.into_iter().last().expect("at least the final state"))
}

fn spectral_on(built: &Built, z: ZGrid, t: f64) -> Result<FieldState> {
    match &built.tower {
        Tower::Halfline(tw) => adskg::halfline::reconstruct(tw, t, z),
        Tower::Brane(tw) => adskg::brane::brane_evolve_reconstruct(tw, t, z),
    }
}

fn l2_rel_diff(a: &FieldState, b: &FieldState) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in a.phi.iter().zip(b.phi.iter()) {
        num += (x - y) * (x - y);
        den += y * y;
    }
    (num / den.max(1e-300)).sqrt()
}

fn fd_compare(
    built: &Built,
    t_end: f64,
    n_z: usize,
    tolerance: f64,
    seed_override: Option<u64>,
) -> Result<VerificationReport> {
    let fd_final = fd_run_to(built, n_z, t_end, seed_override)?;
    let spectral = spectral_on(built, fd_final.z.clone(), fd_final.t)?;
    let diff = l2_rel_diff(&fd_final, &spectral);
    Ok(VerificationReport::new("fd_compare", diff < tolerance, tolerance)
        .with("l2_rel_diff", diff)
        .with("t_end", t_end)
        .with("n_z", n_z as f64)
        .note("independent leapfrog oracle vs spectral reconstruction"))
}

fn fd_convergence(
    built: &Built,
    t_end: f64,
    levels: &[usize],
    order_range: (f64, f64),
    seed_override: Option<u64>,
) -> Result<VerificationReport> {
    if levels.len() < 3 {
        return Err(Error::Config { msg: "fd_convergence needs at least three levels".into() });
    }
    let mut diffs = Vec::new();
    for &n in levels {
        let fd_final = fd_run_to(built, n, t_end, seed_override)?;
        let spectral = spectral_on(built, fd_final.z.clone(), fd_final.t)?;
        diffs.push(l2_rel_diff(&fd_final, &spectral));
    }
    let order = (diffs[0] / diffs[diffs.len() - 1]).log2() / (diffs.len() - 1) as f64;
    let passed = order >= order_range.0 && order <= order_range.1;
    let mut report = VerificationReport::new("fd_convergence", passed, order_range.1)
        .with("observed_order", order);
    for (i, d) in diffs.iter().enumerate() {
        report = report.with(&format!("diff_level{i}"), *d);
    }
    Ok(report.note(format!("order must lie in [{}, {}]", order_range.0, order_range.1)))
}

/// `spectrum` subcommand: eigendata (brane) or mode grid (halfline).
pub fn cmd_spectrum(scenario: &Scenario, out_dir: &Path, seed: Option<u64>) -> Result<()> {
    let built = build(scenario, seed)?;
    std::fs::create_dir_all(out_dir).map_err(io_err)?;
    match &built.tower {
        Tower::Brane(t) => {
            csvio::write_brane_spectrum_csv(&out_dir.join("spectrum.csv"), &scenario.name, &t.spectrum)
                .map_err(io_err)?;
        }
        Tower::Halfline(t) => {
            csvio::write_halfline_spectrum_csv(&out_dir.join("spectrum.csv"), &scenario.name, t)
                .map_err(io_err)?;
        }
    }
    Ok(())
}

/// `evolve` subcommand: snapshots, tower, energy series.
pub fn cmd_evolve(scenario: &Scenario, out_dir: &Path, seed: Option<u64>) -> Result<()> {
    let built = build(scenario, seed)?;
    std::fs::create_dir_all(out_dir).map_err(io_err)?;
    match &built.tower {
        Tower::Halfline(t) => {
            csvio::write_tower_csv(&out_dir.join("tower.csv"), &scenario.name, t).map_err(io_err)?
        }
        Tower::Brane(t) => {
            csvio::write_brane_tower_csv(&out_dir.join("tower.csv"), &scenario.name, t).map_err(io_err)?
        }
    }
    let run = built.run(EvalGridKind::Quadrature)?;
    let mut energy_rows = Vec::new();
    for (i, &t) in scenario.times.iter().enumerate() {
        let state = run.state_at(t)?;
        csvio::write_field_csv(&out_dir.join(format!("field_{i:03}.csv")), &scenario.name, &built.params, &state)
            .map_err(io_err)?;
        energy_rows.push((t, grid_energy(&state, &built.params, built.geometry())?));
    }
    csvio::write_energy_csv(&out_dir.join("energy.csv"), &scenario.name, &built.params, &energy_rows)
        .map_err(io_err)?;
    Ok(())
}

/// `verify` subcommand: run all checks, write the JSON report.
pub fn cmd_verify(scenario: &Scenario, out_dir: Option<&Path>, seed: Option<u64>) -> Result<RunSummary> {
    let built = build(scenario, seed)?;
    let summary = run_checks(&built, seed)?;
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(io_err)?;
        let report = csvio::RunReport {
            scenario: &summary.scenario_name,
            params: summary.params,
            all_passed: summary.all_passed(),
            reports: &summary.reports,
        };
        csvio::write_report_json(&dir.join("report.json"), &report).map_err(io_err)?;
    }
    Ok(summary)
}

/// `oracle-compare` subcommand: only the FD checks of the scenario.
pub fn cmd_oracle_compare(scenario: &Scenario, out_dir: Option<&Path>, seed: Option<u64>) -> Result<RunSummary> {
    let built = build(scenario, seed)?;
    let mut reports = Vec::new();
    for check in &built.scenario.checks {
        if matches!(check, CheckSpec::FdCompare { .. } | CheckSpec::FdConvergence { .. }) {
            reports.push(run_check(&built, check, seed)?);
        }
    }
    if reports.is_empty() {
        return Err(Error::Config { msg: "scenario has no fd_compare / fd_convergence checks".into() });
    }
    let summary = RunSummary { scenario_name: built.scenario.name.clone(), params: built.params, reports };
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir).map_err(io_err)?;
        let report = csvio::RunReport {
            scenario: &summary.scenario_name,
            params: summary.params,
            all_passed: summary.all_passed(),
            reports: &summary.reports,
        };
        csvio::write_report_json(&dir.join("oracle_report.json"), &report).map_err(io_err)?;
    }
    Ok(summary)
}

fn io_err(e: std::io::Error) -> Error {
    Error::Config { msg: format!("I/O error: {e}") }
}
