//! Model parameters: the single source of truth for μ, λ, α± and ν.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameters of the wave operator ∂_t² − Δ_x − ∂_z² + μ/z².
///
/// * `mu` — the potential strength; well-posedness requires μ > −1/4.
/// * `lambda_index` — λ = √(μ + 1/4), the Bessel order of every transform
///   and the near-horizon power law Φ ~ z^{λ+1/2}.
/// * `alpha_plus` / `alpha_minus` — α± = −1/2 ± λ, the first-order-form
///   weights that render the energy density manifestly non-negative.
/// * `nu` — set when μ = (ν²−1)/4 for a positive integer ν, the masses for
///   which the problem lifts to a free wave in 3+ν+2 spatial dimensions
///   (ν = 4: gravitational fluctuations, ν = 2: electromagnetic).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub mu: f64,
    pub lambda_index: f64,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    pub nu: Option<u32>,
}

const NU_DETECT_TOL: f64 = 1e-12;

impl ModelParams {
    /// Build from the potential strength μ. Errors when μ ≤ −1/4.
    pub fn new(mu: f64) -> Result<Self> {
        if !mu.is_finite() || mu <= -0.25 {
            return Err(Error::domain(
                "make_params",
                format!("mass parameter must satisfy -1/4 < mu, got {mu}"),
            ));
        }
        let lambda_index = (mu + 0.25).sqrt();
        let two_lambda = 2.0 * lambda_index;
        let rounded = two_lambda.round();
        let nu = if rounded >= 1.0 && (two_lambda - rounded).abs() <= NU_DETECT_TOL * rounded.max(1.0) {
            Some(rounded as u32)
        } else {
            None
        };
        Ok(ModelParams {
            mu,
            lambda_index,
            alpha_plus: -0.5 + lambda_index,
            alpha_minus: -0.5 - lambda_index,
            nu,
        })
    }

    /// Build from the Klein-Gordon mass of the curved-space equation,
    /// μ = 15/4 + λ_kg (λ_kg = 0: tensor gravitational fluctuations,
    /// λ_kg = −3: electromagnetic). Requires λ_kg > −4.
    pub fn from_cosmological_mass(lambda_kg: f64) -> Result<Self> {
        if !lambda_kg.is_finite() || lambda_kg <= -4.0 {
            return Err(Error::domain(
                "mass_from_cosmological",
                format!("cosmological mass must be > -4, got {lambda_kg}"),
            ));
        }
        Self::new(3.75 + lambda_kg)
    }

    /// λ + 1/2, the vanishing rate at the horizon.
    pub fn horizon_power(&self) -> f64 {
        self.lambda_index + 0.5
    }

    /// ν as an error, for checks whose hypotheses require it.
    pub fn require_nu(&self, op: &'static str) -> Result<u32> {
        self.nu.ok_or_else(|| {
            Error::precondition(op, format!("mu = {} is not of the form (nu^2 - 1)/4", self.mu))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gravitational_case() {
        let p = ModelParams::new(3.75).unwrap();
        assert!((p.lambda_index - 2.0).abs() < 1e-15);
        assert!((p.alpha_plus - 1.5).abs() < 1e-15);
        assert!((p.alpha_minus + 2.5).abs() < 1e-15);
        assert_eq!(p.nu, Some(4));
    }

    #[test]
    fn electromagnetic_case() {
        let p = ModelParams::new(0.75).unwrap();
        assert!((p.lambda_index - 1.0).abs() < 1e-15);
        assert_eq!(p.nu, Some(2));
    }

    #[test]
    fn generic_mass_has_no_nu() {
        let p = ModelParams::new(1.0).unwrap();
        assert_eq!(p.nu, None);
        assert!((p.lambda_index - 1.25f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn boundary_mass_rejected() {
        assert!(ModelParams::new(-0.25).is_err());
        assert!(ModelParams::new(-0.3).is_err());
        assert!(ModelParams::new(f64::NAN).is_err());
    }

    #[test]
    fn cosmological_map() {
        let grav = ModelParams::from_cosmological_mass(0.0).unwrap();
        assert!((grav.mu - 3.75).abs() < 1e-15);
        let em = ModelParams::from_cosmological_mass(-3.0).unwrap();
        assert!((em.mu - 0.75).abs() < 1e-15);
        assert_eq!(em.nu, Some(2));
        assert!(ModelParams::from_cosmological_mass(-4.0).is_err());
    }

    #[test]
    fn nu_one_detected_at_mu_zero() {
        let p = ModelParams::new(0.0).unwrap();
        assert_eq!(p.nu, Some(1));
    }
}
