//! Minimization of coverage over the nuisance parameter `gamma >= 0`.
//!
//! A coarse grid scan locates the best grid point, golden-section search
//! refines inside the neighbouring grid cells, and the `gamma -> infinity`
//! limit value competes as a final candidate. Unimodality is not assumed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bound::CoverageEvaluator;
use crate::error::{Error, Result};
use crate::rules::{BoundProblem, SelectionMethod};
use crate::specialfn::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub gamma_max: f64,
    pub step: f64,
    /// Final golden-section bracket width.
    pub width: f64,
    /// Value of the objective as gamma -> infinity, if known.
    pub limit: Option<f64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            gamma_max: 30.0,
            step: 0.1,
            width: 1e-6,
            limit: None,
        }
    }
}

impl SearchConfig {
    pub fn with_limit(limit: f64) -> Self {
        Self {
            limit: Some(limit),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub bound: f64,
    pub gamma_star: f64,
    pub evaluations: usize,
    pub bracket: (f64, f64),
    /// True when the gamma -> infinity limit beat every probed point.
    pub at_limit: bool,
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Minimize `objective` over gamma in [0, gamma_max] (and the limit).
pub fn minimize_over_gamma<F>(objective: F, config: &SearchConfig) -> Result<BoundResult>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if !(config.step > 0.0 && config.gamma_max >= 0.0 && config.width > 0.0) {
        return Err(Error::InvalidInput("search config needs step > 0, width > 0 and gamma_max >= 0".into()));
    }
    let eval = |g: f64| objective(g).map_err(|e| Error::Objective { gamma: g, source: Box::new(e) });

    let n_grid = (config.gamma_max / config.step).round() as usize;
    let grid: Vec<f64> = (0..=n_grid).map(|i| (i as f64 * config.step).min(config.gamma_max)).collect();
    let values = grid
        .par_iter()
        .map(|&g| eval(g))
        .collect::<Result<Vec<f64>>>()?;

    // argmin, lowest gamma wins ties
    let mut best_i = 0;
    for (i, v) in values.iter().enumerate() {
        if *v < values[best_i] {
            best_i = i;
        }
    }
    let mut best_g = grid[best_i];
    let mut best_v = values[best_i];
    let mut evaluations = values.len();

    let mut lo = if best_i == 0 { grid[0] } else { grid[best_i - 1] };
    let mut hi = if best_i + 1 < grid.len() { grid[best_i + 1] } else { grid[best_i] };

    if hi > lo {
        let mut x1 = hi - INV_PHI * (hi - lo);
        let mut x2 = lo + INV_PHI * (hi - lo);
        let mut f1 = eval(x1)?;
        let mut f2 = eval(x2)?;
        evaluations += 2;
        for (x, f) in [(x1, f1), (x2, f2)] {
            if f < best_v {
                best_v = f;
                best_g = x;
            }
        }
        while hi - lo > config.width {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - INV_PHI * (hi - lo);
                f1 = eval(x1)?;
                if f1 < best_v || (f1 == best_v && x1 < best_g) {
                    best_v = f1;
                    best_g = x1;
                }
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + INV_PHI * (hi - lo);
                f2 = eval(x2)?;
                if f2 < best_v || (f2 == best_v && x2 < best_g) {
                    best_v = f2;
                    best_g = x2;
                }
            }
            evaluations += 1;
        }
    }

    let mut at_limit = false;
    if let Some(limit) = config.limit {
        if limit < best_v {
            best_v = limit;
            at_limit = true;
        }
    }
    Ok(BoundResult {
        bound: best_v,
        gamma_star: if at_limit { config.gamma_max } else { best_g },
        evaluations,
        bracket: (lo, hi),
        at_limit,
    })
}

/// Finite-sample bound: minimum over gamma >= 0 of the coverage probability.
pub fn finite_bound(
    problem: &BoundProblem,
    method: &SelectionMethod,
    tol: Tolerance,
    config: &SearchConfig,
) -> Result<BoundResult> {
    let ev = CoverageEvaluator::new(problem, method, tol)?;
    let cfg = SearchConfig {
        limit: Some(1.0 - problem.alpha),
        ..*config
    };
    minimize_over_gamma(|g| ev.evaluate(g).map(|r| r.value), &cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_objective() {
        let r = minimize_over_gamma(|_| Ok(0.7), &SearchConfig::default()).unwrap();
        assert_eq!(r.bound, 0.7);
        assert_eq!(r.gamma_star, 0.0);
        assert!(!r.at_limit);
    }

    #[test]
    fn finds_interior_minimum() {
        let r = minimize_over_gamma(|g| Ok((g - 2.345_678).powi(2) + 0.1), &SearchConfig::default()).unwrap();
        assert!((r.gamma_star - 2.345_678).abs() < 1e-6);
        assert!((r.bound - 0.1).abs() < 1e-12);
        assert!(r.bracket.1 - r.bracket.0 <= 1e-6);
    }

    #[test]
    fn limit_competes() {
        let cfg = SearchConfig::with_limit(0.5);
        let r = minimize_over_gamma(|g| Ok(1.0 - 0.4 * (-g).exp()), &cfg).unwrap();
        assert_eq!(r.bound, 0.5);
        assert!(r.at_limit);
    }

    #[test]
    fn not_fooled_by_local_minimum() {
        // shallow local dip near 1, deeper one near 7
        let f = |g: f64| Ok(1.0 - 0.1 * (-(g - 1.0).powi(2) * 10.0).exp() - 0.3 * (-(g - 7.0).powi(2) * 10.0).exp());
        let r = minimize_over_gamma(f, &SearchConfig::default()).unwrap();
        assert!((r.gamma_star - 7.0).abs() < 1e-3);
    }

    #[test]
    fn error_names_gamma() {
        let r = minimize_over_gamma(
            |g| if g > 1.05 { Err(Error::Numerical("boom".into())) } else { Ok(g) },
            &SearchConfig::default(),
        );
        match r {
            Err(Error::Objective { gamma, .. }) => assert!(gamma > 1.05),
            other => panic!("unexpected {other:?}"),
        }
    }
}
