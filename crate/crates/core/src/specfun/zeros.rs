//! Zeros of J_ν and eigenvalues of the brane Robin condition.
//!
//! Both solvers walk the axis with a step well below the minimum root
//! spacing (which tends to π from either side), bracket each sign change,
//! and polish with a Newton iteration safeguarded by bisection. The McMahon
//! expansion seeds the Newton start when it lands inside the bracket.

use crate::error::{Error, Result};

use super::bessel::{j_nu, j_nu_prime};

/// Scan step for bracketing; consecutive roots are never closer than ~2.9.
const SCAN_STEP: f64 = 0.4;
const MAX_NEWTON: usize = 80;

/// First `count` strictly positive zeros of J_order, increasing.
///
/// Each returned root satisfies |J_order(root)| < 1e−12·max(1, |J'_order(root)|).
pub fn bessel_zeros(order: f64, count: usize) -> Result<Vec<f64>> {
    if !(order.is_finite() && order >= 0.0) {
        return Err(Error::domain("bessel_zeros", format!("order must be finite and >= 0, got {order}")));
    }
    if count == 0 {
        return Err(Error::domain("bessel_zeros", "count must be >= 1"));
    }
    let f = |x: f64| j_nu(order, x);
    let df = |x: f64| j_nu_prime(order, x);
    // J_ν > 0 on (0, j_{ν,1}); start the scan past the origin to dodge the
    // flat x^ν region where the function is positive but denormal-small.
    let start = (0.25 * order).max(1e-3);
    let roots = scan_roots(&f, &df, start, count, |k| mcmahon_seed(order, k))?;
    for &r in &roots {
        let resid = f(r).abs();
        let bound = 1e-12 * 1.0f64.max(df(r).abs());
        if resid >= bound {
            return Err(Error::Convergence {
                op: "bessel_zeros",
                msg: format!("residual {resid:.3e} at root {r} exceeds {bound:.3e}"),
            });
        }
    }
    Ok(roots)
}

/// The Robin eigenvalue function g(x) = 2 J_λ(x) + x J'_λ(x).
///
/// g(λ_n) = 0 is the boundary condition u'(1) + (3/2)u(1) = 0 applied to
/// u = √(λ_n z) J_λ(λ_n z); for λ = 2 it reduces to x J₁(x).
pub fn robin_condition(lambda: f64, x: f64) -> f64 {
    2.0 * j_nu(lambda, x) + x * j_nu_prime(lambda, x)
}

fn robin_condition_deriv(lambda: f64, x: f64) -> f64 {
    // g' = 2J' + J' + xJ'' with xJ'' = −J' − (x − λ²/x)J
    2.0 * j_nu_prime(lambda, x) - (x - lambda * lambda / x) * j_nu(lambda, x)
}

/// First `count` positive roots λ_n of the Robin condition, increasing.
///
/// Residual |g(λ_n)| < 1e−11 and J_λ(λ_n) ≠ 0 at every root.
pub fn robin_eigenvalues(lambda: f64, count: usize) -> Result<Vec<f64>> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::domain("robin_eigenvalues", format!("lambda must be finite and > 0, got {lambda}")));
    }
    if count == 0 {
        return Err(Error::domain("robin_eigenvalues", "count must be >= 1"));
    }
    let f = |x: f64| robin_condition(lambda, x);
    let df = |x: f64| robin_condition_deriv(lambda, x);
    let start = (0.25 * lambda).max(1e-3);
    // asymptotically the roots track the zeros of J_{λ−1}
    let roots = scan_roots(&f, &df, start, count, |k| mcmahon_seed(lambda - 1.0, k))?;
    for &r in &roots {
        let resid = f(r).abs();
        if resid >= 1e-11 {
            return Err(Error::Convergence {
                op: "robin_eigenvalues",
                msg: format!("residual {resid:.3e} at root {r}"),
            });
        }
        let j_here = j_nu(lambda, r).abs();
        let envelope = (2.0 / (std::f64::consts::PI * r.max(1.0))).sqrt();
        if j_here < 1e-8 * envelope {
            return Err(Error::Convergence {
                op: "robin_eigenvalues",
                msg: format!("J_lambda vanishes at eigenvalue {r}; normalisation undefined"),
            });
        }
    }
    Ok(roots)
}

/// McMahon seed for the k-th zero: β − (4ν²−1)/(8β), β = (k + ν/2 − 1/4)π.
fn mcmahon_seed(nu: f64, k: usize) -> f64 {
    let beta = (k as f64 + 0.5 * nu - 0.25) * std::f64::consts::PI;
    beta - (4.0 * nu * nu - 1.0) / (8.0 * beta)
}

/// March from `start`, bracketing sign changes of `f` until `count` roots
/// are found; refine each bracket with safeguarded Newton.
fn scan_roots(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    start: f64,
    count: usize,
    seed: impl Fn(usize) -> f64,
) -> Result<Vec<f64>> {
    let mut roots = Vec::with_capacity(count);
    let mut x = start;
    let mut fx = f(x);
    let budget = 400 * count + 4000; // scan evaluations; roots are ~π apart
    let mut evals = 0usize;
    while roots.len() < count {
        let xn = x + SCAN_STEP;
        let fxn = f(xn);
        evals += 1;
        if evals > budget {
            return Err(Error::Convergence {
                op: "scan_roots",
                msg: format!("exceeded scan budget after {} roots", roots.len()),
            });
        }
        if fx == 0.0 {
            roots.push(x);
            x = xn;
            fx = fxn;
            continue;
        }
        if fx.signum() != fxn.signum() {
            let guess = seed(roots.len() + 1);
            let root = refine(f, df, x, xn, fx, guess)?;
            roots.push(root);
        }
        x = xn;
        fx = fxn;
    }
    Ok(roots)
}

/// Newton within [a, b] (f(a), f(b) of opposite sign), falling back to
/// bisection whenever a step leaves the bracket or stalls.
fn refine(
    f: &dyn Fn(f64) -> f64,
    df: &dyn Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    mut fa: f64,
    seed: f64,
) -> Result<f64> {
    let mut x = if seed > a && seed < b { seed } else { 0.5 * (a + b) };
    for _ in 0..MAX_NEWTON {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        // maintain the bracket
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let d = df(x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        if (next - x).abs() <= 1e-15 * x.abs() {
            return Ok(next);
        }
        x = next;
        if (b - a) <= 1e-15 * b.abs() {
            return Ok(0.5 * (a + b));
        }
    }
    Err(Error::Convergence {
        op: "refine",
        msg: format!("no convergence in [{a}, {b}]"),
    })
}
