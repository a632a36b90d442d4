//! Artifact files: CSV with one embedded metadata line, JSON reports.
//!
//! Format contract: comma separators, '.' decimal point, header row, LF
//! line endings, floats printed with ryu shortest round-trip formatting.
//! The first line is `# meta: {json}` carrying the model parameters and
//! grid metadata needed to re-run; nothing in the files depends on the
//! wall clock, so identical scenarios produce bit-identical artifacts.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use adskg::brane::{BraneSpectrum, BraneTower};
use adskg::energy::EnergyBreakdown;
use adskg::field::{FieldState, TransverseGrid};
use adskg::halfline::ContinuousTower;
use adskg::specfun::robin_condition;
use adskg::verify::VerificationReport;
use adskg::ModelParams;

pub fn fmt_f64(v: f64) -> String {
    if v == 0.0 && v.is_sign_negative() {
        "0".into()
    } else {
        format!("{v}")
    }
}

fn meta_line<M: Serialize>(meta: &M) -> String {
    format!("# meta: {}\n", serde_json::to_string(meta).expect("metadata serialises"))
}

#[derive(Serialize)]
struct FieldMeta<'a> {
    kind: &'static str,
    scenario: &'a str,
    params: ModelParams,
    t: f64,
    z_points: usize,
    transverse: String,
}

/// Field snapshot: t, r, z, re_phi, im_phi, re_dphi, im_dphi.
/// Fields are real-valued throughout the engine; the imaginary columns are
/// kept for format stability and written as 0.
pub fn write_field_csv(path: &Path, scenario: &str, params: &ModelParams, state: &FieldState) -> std::io::Result<()> {
    let r_nodes: Vec<f64> = match &state.transverse {
        TransverseGrid::Independent { .. } => vec![0.0],
        TransverseGrid::Radial(g) => g.nodes(),
    };
    let meta = FieldMeta {
        kind: "field_snapshot",
        scenario,
        params: *params,
        t: state.t,
        z_points: state.z.len(),
        transverse: format!("{:?}", state.transverse),
    };
    let mut out = meta_line(&meta);
    out.push_str("t,r,z,re_phi,im_phi,re_dphi,im_dphi\n");
    for (iz, &z) in state.z.quad.nodes.iter().enumerate() {
        for (ir, &r) in r_nodes.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},{},0,{},0",
                fmt_f64(state.t),
                fmt_f64(r),
                fmt_f64(z),
                fmt_f64(state.phi[[iz, ir]]),
                fmt_f64(state.dphi[[iz, ir]]),
            );
        }
    }
    fs::write(path, out)
}

#[derive(Serialize)]
struct TowerMeta<'a> {
    kind: &'static str,
    scenario: &'a str,
    params: ModelParams,
    n_k: usize,
    n_m: usize,
    tail_m: f64,
    tail_k: f64,
}

/// Continuous tower: k, m, re_a, im_a, re_b, im_b.
pub fn write_tower_csv(path: &Path, scenario: &str, tower: &ContinuousTower) -> std::io::Result<()> {
    let meta = TowerMeta {
        kind: "continuous_tower",
        scenario,
        params: tower.params,
        n_k: tower.k_grid.len(),
        n_m: tower.m_grid.len(),
        tail_m: tower.tail_m,
        tail_k: tower.tail_k,
    };
    let mut out = meta_line(&meta);
    out.push_str("k,m,re_a,im_a,re_b,im_b\n");
    for (ik, &k) in tower.k_grid.iter().enumerate() {
        for (im, &m) in tower.m_grid.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},0,{},0",
                fmt_f64(k),
                fmt_f64(m),
                fmt_f64(tower.a[[im, ik]]),
                fmt_f64(tower.b[[im, ik]]),
            );
        }
    }
    fs::write(path, out)
}

/// Brane tower: k, m (= λ_n), re_a, im_a, re_b, im_b.
pub fn write_brane_tower_csv(path: &Path, scenario: &str, tower: &BraneTower) -> std::io::Result<()> {
    let meta = TowerMeta {
        kind: "brane_tower",
        scenario,
        params: tower.spectrum.params,
        n_k: tower.k_grid.len(),
        n_m: tower.spectrum.count(),
        tail_m: tower.tail_n,
        tail_k: tower.tail_k,
    };
    let mut out = meta_line(&meta);
    out.push_str("k,m,re_a,im_a,re_b,im_b\n");
    for (ik, &k) in tower.k_grid.iter().enumerate() {
        for (n, &ln) in tower.spectrum.eigenvalues.iter().enumerate() {
            let _ = writeln!(
                out,
                "{},{},{},0,{},0",
                fmt_f64(k),
                fmt_f64(ln),
                fmt_f64(tower.a[[n, ik]]),
                fmt_f64(tower.b[[n, ik]]),
            );
        }
    }
    fs::write(path, out)
}

#[derive(Serialize)]
struct SpectrumMeta<'a> {
    kind: &'static str,
    scenario: &'a str,
    params: ModelParams,
    count: usize,
}

/// Brane spectrum export: n, lambda_n, C_n, robin_residual.
pub fn write_brane_spectrum_csv(path: &Path, scenario: &str, spec: &BraneSpectrum) -> std::io::Result<()> {
    let meta = SpectrumMeta { kind: "brane_spectrum", scenario, params: spec.params, count: spec.count() };
    let mut out = meta_line(&meta);
    out.push_str("n,lambda_n,C_n,robin_residual\n");
    for n in 0..spec.count() {
        let ln = spec.eigenvalues[n];
        let _ = writeln!(
            out,
            "{n},{},{},{}",
            fmt_f64(ln),
            fmt_f64(spec.norm_constants[n]),
            fmt_f64(robin_condition(spec.params.lambda_index, ln)),
        );
    }
    fs::write(path, out)
}

/// Half-line mode-grid export: m, weight.
pub fn write_halfline_spectrum_csv(
    path: &Path,
    scenario: &str,
    tower: &ContinuousTower,
) -> std::io::Result<()> {
    let meta = SpectrumMeta {
        kind: "halfline_mode_grid",
        scenario,
        params: tower.params,
        count: tower.m_grid.len(),
    };
    let mut out = meta_line(&meta);
    out.push_str("m,weight\n");
    for (m, w) in tower.m_grid.iter().zip(&tower.m_weights) {
        let _ = writeln!(out, "{},{}", fmt_f64(*m), fmt_f64(*w));
    }
    fs::write(path, out)
}

/// Energy time series: t, kinetic, potential_transverse, potential_z,
/// boundary, total.
pub fn write_energy_csv(
    path: &Path,
    scenario: &str,
    params: &ModelParams,
    rows: &[(f64, EnergyBreakdown)],
) -> std::io::Result<()> {
    #[derive(Serialize)]
    struct EnergyMeta<'a> {
        kind: &'static str,
        scenario: &'a str,
        params: ModelParams,
    }
    let mut out = meta_line(&EnergyMeta { kind: "energy_series", scenario, params: *params });
    out.push_str("t,kinetic,potential_transverse,potential_z,boundary,total\n");
    for (t, e) in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            fmt_f64(*t),
            fmt_f64(e.kinetic),
            fmt_f64(e.potential_transverse),
            fmt_f64(e.potential_z),
            fmt_f64(e.boundary),
            fmt_f64(e.total),
        );
    }
    fs::write(path, out)
}

#[derive(Serialize)]
pub struct RunReport<'a> {
    pub scenario: &'a str,
    pub params: ModelParams,
    pub all_passed: bool,
    pub reports: &'a [VerificationReport],
}

pub fn write_report_json(path: &Path, report: &RunReport) -> std::io::Result<()> {
    fs::write(path, serde_json::to_string_pretty(report).expect("report serialises"))
}
