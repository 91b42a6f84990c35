//! Large-sample (m = infinity) coverage for the conservative selection rules.
//!
//! Two independent routes are provided: a single integral over the selection
//! region `[-d', d']`, and the bivariate-normal rewrite integrating over the
//! acceptance region `[-z, z]` of the standard interval. They must agree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::minimize::{minimize_over_gamma, BoundResult, SearchConfig};
use crate::quad::{integrate, QuadConfig};
use crate::rules::SelectionMethod;
use crate::specialfn::{delta, norm_pdf, z_quantile};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticProblem {
    pub alpha: f64,
    pub rho: f64,
    pub d_prime: f64,
    /// Two-sided normal critical value for `alpha`.
    pub z: f64,
}

impl AsymptoticProblem {
    pub fn new(alpha: f64, rho: f64, d_prime: f64) -> Result<Self> {
        if !(rho.abs() < 1.0) {
            return Err(Error::InvalidInput(format!(
                "large-sample coverage needs |rho| < 1, got {rho}"
            )));
        }
        if !(d_prime > 0.0 && d_prime.is_finite()) {
            return Err(Error::InvalidInput(format!("d' must be > 0, got {d_prime}")));
        }
        let z = z_quantile(alpha)?;
        Ok(Self { alpha, rho, d_prime, z })
    }

    /// Problem for a built-in rule; BIC and t-tests are rejected.
    pub fn for_method(alpha: f64, rho: f64, method: &SelectionMethod) -> Result<Self> {
        Self::new(alpha, rho, method.asymptotic_d()?)
    }

    fn s(&self) -> f64 {
        (1.0 - self.rho * self.rho).sqrt()
    }
}

fn quad_cfg() -> QuadConfig {
    QuadConfig {
        abs_tol: 1e-12,
        rel_tol: 1e-15,
        max_panels: 2000,
        initial_panels: 2,
    }
}

fn integral(f: impl FnMut(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    let r = integrate(f, a, b, &quad_cfg());
    if !r.converged && r.abs_err > 1e-10 {
        return Err(Error::QuadratureNonConvergence {
            estimate: r.value,
            achieved_err: r.abs_err,
            target_err: 1e-10,
        });
    }
    Ok(r.value)
}

/// 1 − α + Δ(ργ/s, z) Δ(γ, d′) − ∫_{−d′}^{d′} Δ(ρ(h−γ)/s, z/s) φ(h−γ) dh.
pub fn asymptotic_coverage(problem: &AsymptoticProblem, gamma: f64) -> Result<f64> {
    let s = problem.s();
    let rho = problem.rho;
    let (z, dp) = (problem.z, problem.d_prime);
    let lead = delta(rho * gamma / s, z) * delta(gamma, dp);
    let int = integral(
        |h| delta(rho * (h - gamma) / s, z / s) * norm_pdf(h - gamma),
        -dp,
        dp,
    )?;
    Ok(1.0 - problem.alpha + lead - int)
}

/// Same quantity via P(−z ≤ A ≤ z, −d′ ≤ B ≤ d′) conditioned on A:
/// 1 − α + Δ(ργ/s, z) Δ(γ, d′) − ∫_{−z}^{z} Δ((γ+ρh)/s, d′/s) φ(h) dh.
pub fn asymptotic_coverage_bivariate(problem: &AsymptoticProblem, gamma: f64) -> Result<f64> {
    let s = problem.s();
    let rho = problem.rho;
    let (z, dp) = (problem.z, problem.d_prime);
    let lead = delta(rho * gamma / s, z) * delta(gamma, dp);
    let int = integral(|h| delta((gamma + rho * h) / s, dp / s) * norm_pdf(h), -z, z)?;
    Ok(1.0 - problem.alpha + lead - int)
}

/// Large-sample bound: minimum over gamma >= 0 of `asymptotic_coverage`.
pub fn asymptotic_bound(problem: &AsymptoticProblem) -> Result<BoundResult> {
    asymptotic_bound_with(problem, &SearchConfig::default())
}

pub fn asymptotic_bound_with(problem: &AsymptoticProblem, config: &SearchConfig) -> Result<BoundResult> {
    let cfg = SearchConfig {
        limit: Some(1.0 - problem.alpha),
        ..*config
    };
    minimize_over_gamma(|g| asymptotic_coverage(problem, g), &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn zero_rho_is_nominal() {
        let pr = AsymptoticProblem::new(0.05, 0.0, SQRT_2).unwrap();
        for &g in &[0.0, 0.7, 2.0, 5.0] {
            assert!((asymptotic_coverage(&pr, g).unwrap() - 0.95).abs() < 1e-12);
            assert!((asymptotic_coverage_bivariate(&pr, g).unwrap() - 0.95).abs() < 1e-12);
        }
        let b = asymptotic_bound(&pr).unwrap();
        assert!((b.bound - 0.95).abs() < 1e-12);
    }

    #[test]
    fn far_gamma_is_nominal() {
        let pr = AsymptoticProblem::new(0.05, 0.7, 1.0).unwrap();
        assert!((asymptotic_coverage(&pr, 30.0).unwrap() - 0.95).abs() < 1e-9);
    }

    #[test]
    fn forms_agree() {
        for &rho in &[-0.8, -0.2, 0.35, 0.9] {
            let pr = AsymptoticProblem::new(0.1, rho, SQRT_2).unwrap();
            for &g in &[-1.5, 0.0, 0.4, 2.2] {
                let a = asymptotic_coverage(&pr, g).unwrap();
                let b = asymptotic_coverage_bivariate(&pr, g).unwrap();
                assert!((a - b).abs() < 1e-9, "rho={rho} g={g}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn bivariate_is_even_in_gamma() {
        let pr = AsymptoticProblem::new(0.05, 0.6, 1.0).unwrap();
        let a = asymptotic_coverage_bivariate(&pr, 1.3).unwrap();
        let b = asymptotic_coverage_bivariate(&pr, -1.3).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn consistent_rules_rejected() {
        assert!(matches!(
            AsymptoticProblem::for_method(0.05, 0.5, &SelectionMethod::BIC),
            Err(Error::NotApplicable(_))
        ));
    }

    #[test]
    fn near_one_is_low() {
        let pr = AsymptoticProblem::new(0.05, 0.999, SQRT_2).unwrap();
        assert!(asymptotic_bound(&pr).unwrap().bound < 0.2);
    }
}
