//! Scenario files: a single JSON document describing geometry, mass,
//! datum, grids, times and the checks to run. Unknown keys are errors, so
//! a typo cannot silently drop a physics setting.

use serde::{Deserialize, Serialize};

use adskg::error::Error;
use adskg::ModelParams;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub geometry: Geometry,
    pub mass: MassSpec,
    pub datum: DatumSpec,
    pub transverse: TransverseSpec,
    pub grids: GridSpec,
    #[serde(default)]
    pub times: Vec<f64>,
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Geometry {
    Halfline,
    Brane,
}

/// Exactly one of the two mass conventions.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MassSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda_cosmological: Option<f64>,
}

impl MassSpec {
    pub fn params(&self) -> adskg::Result<ModelParams> {
        match (self.mu, self.lambda_cosmological) {
            (Some(mu), None) => ModelParams::new(mu),
            (None, Some(l)) => ModelParams::from_cosmological_mass(l),
            _ => Err(Error::Config {
                msg: "exactly one of mass.mu / mass.lambda_cosmological must be set".into(),
            }),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DatumSpec {
    /// Gaussian at rest in z; effective support z_center ± 6·width.
    GaussianBump { z_center: f64, width: f64, amplitude: f64 },
    /// Spherical Gaussian shell inside the ball ρ ≤ r_outer (radial runs).
    AnnulusBump { r_outer: f64, amplitude: f64 },
    /// Centred radial Gaussian z^{λ+1/2} e^{−ρ²/2σ²} (radial runs).
    RadialGaussian { sigma: f64, amplitude: f64 },
    /// z^{λ+1/2}·Gaussian in z (and in r when given): the slab workhorse.
    SlabGaussian {
        z_center: f64,
        z_width: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r_width: Option<f64>,
        amplitude: f64,
    },
    /// z^{λ+1/2} e^{−z²/2}, whose transform has a closed form.
    HankelSelfReciprocal,
    /// Single brane eigenmode u_n (brane geometry), optionally modulated
    /// by a radial Gaussian exp(−r²/2w²) for 3D runs.
    PureMode {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        r_width: Option<f64>,
    },
    /// Modulated packet; κ < 0 travels toward the horizon.
    Packet { z0: f64, kappa: f64, sigma: f64 },
    /// Random superposition of smooth modes; coefficients from the run
    /// seed (CLI --seed overrides the scenario value).
    RandomSmooth { modes: usize, amplitude: f64 },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransverseSpec {
    Independent {
        #[serde(default)]
        k: f64,
    },
    Radial {
        r_max: f64,
        dst_size: usize,
        /// truncation of the kept sine wavenumbers
        k_max: f64,
    },
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    /// z extent of the decomposition quadrature (must cover the datum).
    pub z_quad_max: f64,
    /// Kaluza-Klein mass truncation (halfline) — per-datum guidance in the
    /// bundled scenarios.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<f64>,
    /// Largest z + |t| the run is evaluated at (sets the m panel rule).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reach: Option<f64>,
    /// Number of discrete brane modes (brane geometry).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modes: Option<usize>,
    /// Evaluation grid in z.
    pub z_eval_max: f64,
    pub z_eval_points: usize,
    pub z_eval_kind: EvalGridKind,
    #[serde(default = "default_tail_budget")]
    pub tail_budget: f64,
}

fn default_tail_budget() -> f64 {
    1e-8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalGridKind {
    /// Uniform staggered grid: sup norms, packet tracking, FD comparison.
    Uniform,
    /// Composite Gauss-Legendre: grid-side energies.
    Quadrature,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckSpec {
    Conservation {
        tolerance: f64,
    },
    FiniteSpeed {
        tolerance: f64,
        support_z_max: f64,
        #[serde(default)]
        support_r_max: f64,
        probe_time: f64,
        /// 1 for the physical cone; < 1 builds a negative control that
        /// must overflow.
        slope: f64,
        expect_contained: bool,
    },
    Lacuna {
        tolerance: f64,
        support_radius: f64,
        probe_time: f64,
        expect: LacunaExpect,
    },
    Equipartition {
        tolerance: f64,
        support_radius: f64,
    },
    DecayFit {
        window: (f64, f64),
        expected_exponent: f64,
        band: f64,
        min_r_squared: f64,
        /// sup weight z^w; None means the horizon weight w = −(λ + 1/2)
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weight_exponent: Option<f64>,
    },
    Strichartz {
        pairs: Vec<StrichartzPair>,
        t_max: f64,
        saturation_tol: f64,
    },
    PacketMirror {
        tolerance: f64,
        incoming: (f64, f64),
        outgoing: (f64, f64),
        expected_bounce: f64,
        bounce_band: f64,
    },
    LiftResidual {
        t: f64,
        dt: f64,
        window: (f64, f64),
        tolerance: f64,
    },
    FdCompare {
        t_end: f64,
        n_z: usize,
        tolerance: f64,
    },
    FdConvergence {
        t_end: f64,
        levels: Vec<usize>,
        order_range: (f64, f64),
    },
}

impl CheckSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CheckSpec::Conservation { .. } => "conservation",
            CheckSpec::FiniteSpeed { expect_contained: true, .. } => "finite_speed",
            CheckSpec::FiniteSpeed { expect_contained: false, .. } => "finite_speed_negative_control",
            CheckSpec::Lacuna { expect: LacunaExpect::Vanishes, .. } => "lacuna",
            CheckSpec::Lacuna { expect: LacunaExpect::Persists, .. } => "lacuna_negative_control",
            CheckSpec::Equipartition { .. } => "equipartition",
            CheckSpec::DecayFit { .. } => "decay_fit",
            CheckSpec::Strichartz { .. } => "strichartz_bounded",
            CheckSpec::PacketMirror { .. } => "packet_mirror",
            CheckSpec::LiftResidual { .. } => "lift_residual",
            CheckSpec::FdCompare { .. } => "fd_compare",
            CheckSpec::FdConvergence { .. } => "fd_convergence",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LacunaExpect {
    Vanishes,
    Persists,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrichartzFamily {
    General,
    EvenNu,
    OddNu,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrichartzPair {
    pub q: f64,
    pub r: f64,
    pub weight_exponent: f64,
    pub family: StrichartzFamily,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario, String> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| format!("scenario parse error: {e}"))?;
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), String> {
        let params = self.mass.params().map_err(|e| e.to_string())?;
        if !(self.grids.z_quad_max > 0.0 && self.grids.z_eval_max > 0.0 && self.grids.z_eval_points > 0) {
            return Err("grids must have positive extents and point counts".into());
        }
        if self.geometry == Geometry::Brane {
            if self.grids.modes.is_none() {
                return Err("brane scenarios need grids.modes".into());
            }
            if (self.grids.z_quad_max - 1.0).abs() > 1e-12 || self.grids.z_eval_max > 1.0 {
                return Err("brane scenarios live on z in (0, 1]".into());
            }
        } else {
            if self.grids.m_max.is_none() || self.grids.reach.is_none() {
                return Err("halfline scenarios need grids.m_max and grids.reach".into());
            }
        }
        match (&self.datum, &self.transverse) {
            (DatumSpec::AnnulusBump { .. } | DatumSpec::RadialGaussian { .. }, TransverseSpec::Independent { .. }) => {
                return Err("radial data need a radial transverse grid".into());
            }
            (DatumSpec::PureMode { .. }, _) if self.geometry != Geometry::Brane => {
                return Err("pure_mode data only make sense on the brane".into());
            }
            _ => {}
        }
        for check in &self.checks {
            match check {
                CheckSpec::Lacuna { expect, .. } => {
                    let nu = params.nu;
                    match expect {
                        LacunaExpect::Vanishes => {
                            let Some(nu) = nu else {
                                return Err(format!(
                                    "lacuna check requires mu of the form (nu^2-1)/4; mu = {} is not",
                                    params.mu
                                ));
                            };
                            if nu % 2 != 0 {
                                return Err(format!("lacuna vanishing needs even nu, got nu = {nu}"));
                            }
                        }
                        LacunaExpect::Persists => {}
                    }
                    if !matches!(self.transverse, TransverseSpec::Radial { .. }) {
                        return Err("lacuna check needs radial data".into());
                    }
                }
                CheckSpec::Equipartition { .. } => {
                    match params.nu {
                        Some(nu) if nu % 2 == 0 => {}
                        _ => return Err("equipartition check needs even nu".into()),
                    }
                }
                CheckSpec::Strichartz { .. } | CheckSpec::LiftResidual { .. } => {
                    if params.nu.is_none() {
                        return Err(format!("{} needs mu of the form (nu^2-1)/4", check.name()));
                    }
                }
                CheckSpec::Conservation { .. } if self.times.len() < 2 => {
                    return Err("conservation check needs at least two times".into());
                }
                _ => {}
            }
        }
        Ok(())
    }
}
