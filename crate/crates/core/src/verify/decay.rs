//! Log-log decay fits of weighted sup norms.

use serde::Serialize;

use crate::error::{Error, Result};

use super::EvolvingField;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FitWindow {
    pub t_min: f64,
    pub t_max: f64,
}

/// Least-squares power-law fit v ≈ C·t^exponent on (log t, log v).
#[derive(Clone, Debug, Serialize)]
pub struct DecayFit {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub exponent: f64,
    pub exponent_stderr: f64,
    pub r_squared: f64,
    pub window: FitWindow,
}

/// Fit within the window; errors when fewer than 5 samples land inside or
/// any value is non-positive there.
pub fn fit_decay(times: &[f64], values: &[f64], window: FitWindow) -> Result<DecayFit> {
    if times.len() != values.len() {
        return Err(Error::shape("fit_decay", "times/values length mismatch"));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut kept_t = Vec::new();
    let mut kept_v = Vec::new();
    for (&t, &v) in times.iter().zip(values) {
        if t < window.t_min || t > window.t_max {
            continue;
        }
        if !(v > 0.0) {
            return Err(Error::domain("fit_decay", format!("non-positive value {v} at t = {t}")));
        }
        xs.push(t.ln());
        ys.push(v.ln());
        kept_t.push(t);
        kept_v.push(v);
    }
    let n = xs.len();
    if n < 5 {
        return Err(Error::precondition("fit_decay", format!("only {n} samples in the window, need >= 5")));
    }
    let nf = n as f64;
    let xbar = xs.iter().sum::<f64>() / nf;
    let ybar = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - xbar) * (x - xbar)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - xbar) * (y - ybar)).sum();
    let slope = sxy / sxx;
    let intercept = ybar - slope * xbar;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - ybar) * (y - ybar)).sum();
    let stderr = if n > 2 { (ss_res / (nf - 2.0) / sxx).sqrt() } else { 0.0 };
    let r_squared = if ss_tot > 0.0 { 1.0 - ss_res / ss_tot } else { 1.0 };
    Ok(DecayFit {
        times: kept_t,
        values: kept_v,
        exponent: slope,
        exponent_stderr: stderr,
        r_squared,
        window,
    })
}

/// sup over the grid of z^{weight_exponent}·|Φ(t)| for each time.
/// The decay statements use weight_exponent = −(λ + 1/2).
pub fn weighted_sup_series(
    run: &dyn EvolvingField,
    times: &[f64],
    weight_exponent: f64,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(times.len());
    for &t in times {
        let state = run.state_at(t)?;
        out.push(state.weighted_sup(|_, z| z.powf(weight_exponent)));
    }
    Ok(out)
}
