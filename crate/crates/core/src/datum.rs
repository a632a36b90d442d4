//! Analytic initial data used by the scenarios and tests.
//!
//! Two kinds of profile appear:
//!
//! * Gaussians (plain, shell-shaped, or modulated). They are not compactly
//!   supported, but six standard deviations buy amplitude ~1e−8 and their
//!   transforms decay like Gaussians, which keeps every spectral truncation
//!   budget cheap. "Supported in …" below always means at that level.
//! * The mollifier bump, exactly supported, for tests that need a hard
//!   support edge. Its transform decays only like exp(−c√m), so it is kept
//!   out of the large production scenarios.

use crate::params::ModelParams;

/// C^∞ bump on (−1, 1): exp(1 − 1/(1−s²)), exactly zero outside, max 1 at 0.
pub fn bump(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// d/ds of [`bump`].
pub fn bump_deriv(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        let d = 1.0 - s * s;
        bump(s) * (-2.0 * s / (d * d))
    }
}

/// Gaussian in z at rest (Φ₁ = 0): A·exp(−(z−c)²/(2w²)).
///
/// Effectively supported in [c − 6w, c + 6w] (amplitude 1.5e−8 at the
/// edge); keep c − 6w > 0 so the horizon sees nothing.
pub struct GaussianBump {
    pub z_center: f64,
    pub width: f64,
    pub amplitude: f64,
}

impl GaussianBump {
    pub fn phi0(&self, z: f64) -> f64 {
        let s = (z - self.z_center) / self.width;
        self.amplitude * (-0.5 * s * s).exp()
    }

    /// Effective support at the 1e−8 level.
    pub fn support(&self) -> (f64, f64) {
        (self.z_center - 6.0 * self.width, self.z_center + 6.0 * self.width)
    }
}

/// Spherical-shell datum for lacuna/equipartition runs, supported (at the
/// 1e−6 level) inside the ball ρ = √(r²+z²) ≤ R and away from the origin:
///
/// ```text
/// Φ₀(r, z) = A · z^{λ+1/2} · exp(−(ρ² − 0.5R²)² / (2(0.085R²)²)),  Φ₁ = 0.
/// ```
///
/// The profile is a function of ρ² alone (times the mandatory z^{λ+1/2}),
/// so its lift to 3+ν+2 flat dimensions is analytic, and its transform
/// decays like a Gaussian with κ·σ_ρ, σ_ρ ≈ 0.075R.
pub struct AnnulusBump {
    pub r_outer: f64,
    pub amplitude: f64,
}

impl AnnulusBump {
    pub fn shell(&self, rho2: f64) -> f64 {
        let r2 = self.r_outer * self.r_outer;
        let c = 0.5 * r2;
        let s = 0.085 * r2;
        let d = (rho2 - c) / s;
        (-0.5 * d * d).exp()
    }

    pub fn phi0(&self, params: &ModelParams, r: f64, z: f64) -> f64 {
        self.amplitude * z.powf(params.horizon_power()) * self.shell(r * r + z * z)
    }

    /// Wavenumber beyond which the spectral amplitude of the shell is
    /// below ~1e−9 of its peak (per transform direction). Sup-norm probes
    /// (the lacuna) see truncation at amplitude level, not mass level, so
    /// this is deliberately generous.
    pub fn kappa_max(&self) -> f64 {
        let rho0 = 0.5f64.sqrt() * self.r_outer;
        let sigma_rho = 0.085 * self.r_outer * self.r_outer / (2.0 * rho0);
        6.5 / sigma_rho
    }
}

/// Centred radial Gaussian with the horizon prefactor:
/// Φ₀ = A·z^{λ+1/2}·exp(−(r²+z²)/(2σ²)), Φ₁ = 0. The workhorse datum for
/// decay, Strichartz and conservation runs: effective radius ~4σ, spectra
/// below 1e−9 beyond κ ≈ 8.6/σ + algebraic corrections.
pub struct RadialGaussian {
    pub sigma: f64,
    pub amplitude: f64,
}

impl RadialGaussian {
    pub fn phi0(&self, params: &ModelParams, r: f64, z: f64) -> f64 {
        let rho2 = r * r + z * z;
        self.amplitude * z.powf(params.horizon_power()) * (-0.5 * rho2 / (self.sigma * self.sigma)).exp()
    }

    pub fn kappa_max(&self) -> f64 {
        10.0 / self.sigma
    }

    /// Radius containing all but ~1e−8 of the mass.
    pub fn effective_radius(&self) -> f64 {
        5.0 * self.sigma
    }
}

/// z^{λ+1/2} times a Gaussian in z (and optionally in r): the generic
/// smooth datum for slab runs, vanishing near both walls when
/// z_center ± 6·z_width stays inside (0, 1).
pub struct SlabGaussian {
    pub z_center: f64,
    pub z_width: f64,
    pub r_width: Option<f64>,
    pub amplitude: f64,
}

impl SlabGaussian {
    pub fn phi0(&self, params: &ModelParams, r: f64, z: f64) -> f64 {
        let sz = (z - self.z_center) / self.z_width;
        let mut v = self.amplitude * z.powf(params.horizon_power()) * (-0.5 * sz * sz).exp();
        if let Some(wr) = self.r_width {
            v *= (-0.5 * r * r / (wr * wr)).exp();
        }
        v
    }
}

/// The Hankel self-reciprocal profile z^{λ+1/2} e^{−z²/2} (Φ₁ = 0); its
/// transform is m^{λ+1/2} e^{−m²/2}, which makes decomposition testable
/// against a closed form.
pub struct SelfReciprocal;

impl SelfReciprocal {
    pub fn phi0(params: &ModelParams, z: f64) -> f64 {
        z.powf(params.horizon_power()) * (-0.5 * z * z).exp()
    }
}

/// Modulated Gaussian packet travelling toward the horizon (κ < 0) or away
/// from it (κ > 0) at unit speed:
///
/// ```text
/// Φ₀ = e^{−(z−z₀)²/(2σ²)} cos(κ(z−z₀)),   Φ₁ = −sign(κ) ∂_z Φ₀.
/// ```
pub struct Packet {
    pub z0: f64,
    pub kappa: f64,
    pub sigma: f64,
}

impl Packet {
    pub fn phi0(&self, z: f64) -> f64 {
        let d = z - self.z0;
        (-0.5 * d * d / (self.sigma * self.sigma)).exp() * (self.kappa * d).cos()
    }

    pub fn phi1(&self, z: f64) -> f64 {
        let d = z - self.z0;
        let env = (-0.5 * d * d / (self.sigma * self.sigma)).exp();
        let denv = -d / (self.sigma * self.sigma) * env;
        let dphi0 = denv * (self.kappa * d).cos() - env * self.kappa * (self.kappa * d).sin();
        -self.kappa.signum() * dphi0
    }
}
