//! Coverage probability of the naive interval after selecting between the
//! full model and the model with `beta_p = 0`, as a double integral over the
//! residual scale `w` and the standardized statistic `x = h / w`.
//!
//! The integrand is `(k - k_dagger) * phi(w x - gamma) * w * f_W(w)` where
//! `k_dagger` is the conditional coverage of the full-model interval and `k`
//! that of the restricted interval, both given `(H, W) = (w x, w)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{integrate, QuadConfig};
use crate::rules::{BoundProblem, SelectionMethod};
use crate::specialfn::{
    delta, norm_cdf, norm_pdf, psi_unchecked, t_quantile, w_density, w_mass_interval, Tolerance,
    DEFAULT_W_TAIL_MASS,
};

/// |rho| closer than this to 1 (but not equal) is pulled back to 1 - RHO_CLAMP.
pub const RHO_CLAMP: f64 = 1e-6;

const INNER_MAX_PANELS: usize = 400;
const OUTER_MAX_PANELS: usize = 600;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageResult {
    pub value: f64,
    pub quad_err: f64,
    pub panels_used: usize,
    /// Set when |rho| was within RHO_CLAMP of 1 and had to be moved.
    pub rho_clamped: bool,
}

/// (ℓ1(w), u1(w)) = (−t(m) w, t(m) w).
pub fn lower_upper_1(w: f64, m: u64, alpha: f64) -> Result<(f64, f64)> {
    check_w(w)?;
    let t = t_quantile(m, alpha)?;
    Ok((-t * w, t * w))
}

/// (ℓ2, u2): centre rho*h, half-width t(m+1) sqrt((m w² + h²)/(m+1)) sqrt(1 − rho²).
pub fn lower_upper_2(h: f64, w: f64, rho: f64, m: u64, alpha: f64) -> Result<(f64, f64)> {
    check_w(w)?;
    check_rho(rho)?;
    let t1 = t_quantile(m + 1, alpha)?;
    let half = restricted_half_width(t1, h, w, m as f64) * (1.0 - rho * rho).max(0.0).sqrt();
    Ok((rho * h - half, rho * h + half))
}

/// Conditional coverage of the full-model interval given (H, W) = (h, w).
pub fn k_dagger(h: f64, w: f64, gamma: f64, rho: f64, problem: &BoundProblem) -> Result<f64> {
    check_rho(rho)?;
    let (lo, hi) = lower_upper_1(w, problem.m(), problem.alpha)?;
    Ok(psi_unchecked(lo, hi, rho * (h - gamma), 1.0 - rho * rho))
}

/// Conditional coverage of the restricted interval given (H, W) = (h, w).
pub fn k_fn(h: f64, w: f64, gamma: f64, rho: f64, problem: &BoundProblem) -> Result<f64> {
    let (lo, hi) = lower_upper_2(h, w, rho, problem.m(), problem.alpha)?;
    Ok(psi_unchecked(lo, hi, rho * (h - gamma), 1.0 - rho * rho))
}

fn check_w(w: f64) -> Result<()> {
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::InvalidInput(format!("w must be > 0, got {w}")));
    }
    Ok(())
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho.abs() <= 1.0) {
        return Err(Error::InvalidInput(format!("rho must lie in [-1, 1], got {rho}")));
    }
    Ok(())
}

#[inline]
fn restricted_half_width(t1: f64, h: f64, w: f64, m: f64) -> f64 {
    t1 * ((m * w * w + h * h) / (m + 1.0)).sqrt()
}

/// Precomputed pieces of the coverage integral for one (problem, d) pair.
#[derive(Debug, Clone)]
pub struct CoverageEvaluator {
    alpha: f64,
    m: u64,
    rho: f64,
    rho_clamped: bool,
    d: f64,
    t0: f64,
    t1: f64,
    s: f64,
    w_lo: f64,
    w_hi: f64,
    tol: Tolerance,
}

impl CoverageEvaluator {
    pub fn new(problem: &BoundProblem, method: &SelectionMethod, tol: Tolerance) -> Result<Self> {
        let d = method.threshold_d(problem.n, problem.p)?;
        Self::with_threshold(problem, d, tol)
    }

    /// Evaluator for an explicit threshold `d >= 0`.
    pub fn with_threshold(problem: &BoundProblem, d: f64, tol: Tolerance) -> Result<Self> {
        if !(d >= 0.0 && d.is_finite()) {
            return Err(Error::InvalidInput(format!("threshold d must be finite and >= 0, got {d}")));
        }
        let mut rho = problem.rho;
        if rho.abs() == 1.0 {
            return Err(Error::RhoOneRedirect);
        }
        let mut rho_clamped = false;
        if 1.0 - rho.abs() < RHO_CLAMP {
            rho = rho.signum() * (1.0 - RHO_CLAMP);
            rho_clamped = true;
        }
        let m = problem.m();
        let (w_lo, w_hi) = w_mass_interval(m, DEFAULT_W_TAIL_MASS);
        Ok(Self {
            alpha: problem.alpha,
            m,
            rho,
            rho_clamped,
            d,
            t0: t_quantile(m, problem.alpha)?,
            t1: t_quantile(m + 1, problem.alpha)?,
            s: (1.0 - rho * rho).sqrt(),
            w_lo: w_lo.max(f64::MIN_POSITIVE),
            w_hi,
            tol,
        })
    }

    pub fn threshold(&self) -> f64 {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// (k − k†) φ(h − γ) at h = w x.
    #[inline]
    pub fn integrand(&self, x: f64, w: f64, gamma: f64) -> f64 {
        let h = w * x;
        let weight = norm_pdf(h - gamma);
        if weight == 0.0 {
            return 0.0;
        }
        let rs = self.rho / self.s;
        let k = delta(rs * gamma, restricted_half_width(self.t1, h, w, self.m as f64));
        let k_dag = delta(rs * (h - gamma), self.t0 * w / self.s);
        (k - k_dag) * weight
    }

    /// Coverage probability at `gamma`.
    pub fn evaluate(&self, gamma: f64) -> Result<CoverageResult> {
        if !gamma.is_finite() {
            return Err(Error::InvalidInput(format!("gamma must be finite, got {gamma}")));
        }
        let base = 1.0 - self.alpha;
        let trunc = DEFAULT_W_TAIL_MASS;
        if self.d == 0.0 {
            return Ok(CoverageResult {
                value: base,
                quad_err: 0.0,
                panels_used: 0,
                rho_clamped: self.rho_clamped,
            });
        }
        // |k − k†| ≤ 1, so the correction is bounded by P(|H| < d W)
        let selection_mass = norm_cdf(self.d * self.w_hi - gamma.abs());
        if selection_mass + trunc <= 0.1 * self.tol.abs_err {
            return Ok(CoverageResult {
                value: base,
                quad_err: selection_mass + trunc,
                panels_used: 0,
                rho_clamped: self.rho_clamped,
            });
        }

        let inner_cfg = QuadConfig {
            abs_tol: 0.25 * self.tol.abs_err,
            rel_tol: 1e-15,
            max_panels: INNER_MAX_PANELS,
            initial_panels: 2,
        };
        let outer_cfg = QuadConfig {
            abs_tol: 0.5 * self.tol.abs_err,
            rel_tol: 1e-15,
            max_panels: OUTER_MAX_PANELS,
            initial_panels: 4,
        };
        let mut inner_err_max: f64 = 0.0;
        let mut inner_failed = false;
        let mut inner_panels = 0usize;
        let d = self.d;
        let m = self.m;
        let outer = integrate(
            |w: f64| {
                let fw = match w_density(w, m) {
                    Ok(v) => v,
                    Err(_) => return 0.0,
                };
                if fw == 0.0 {
                    return 0.0;
                }
                let r = integrate(|x| self.integrand(x, w, gamma), -d, d, &inner_cfg);
                inner_err_max = inner_err_max.max(r.abs_err);
                inner_failed |= !r.converged;
                inner_panels += r.panels;
                w * fw * r.value
            },
            self.w_lo,
            self.w_hi,
            &outer_cfg,
        );
        // ∫ w f_W(w) dw = E[W] ≤ 1 bounds the propagated inner error
        let quad_err = outer.abs_err + inner_err_max + trunc;
        let value = base + outer.value;
        if !outer.converged || inner_failed || quad_err > self.tol.abs_err {
            return Err(Error::QuadratureNonConvergence {
                estimate: value,
                achieved_err: quad_err,
                target_err: self.tol.abs_err,
            });
        }
        Ok(CoverageResult {
            value: value.clamp(0.0, 1.0),
            quad_err,
            panels_used: outer.panels + inner_panels,
            rho_clamped: self.rho_clamped,
        })
    }
}

/// Coverage probability of the naive interval at `gamma` for `|rho| < 1`.
pub fn coverage_probability(
    problem: &BoundProblem,
    method: &SelectionMethod,
    gamma: f64,
    tol: Tolerance,
) -> Result<CoverageResult> {
    CoverageEvaluator::new(problem, method, tol)?.evaluate(gamma)
}

/// Minimum coverage bound at |rho| = 1:
/// `2 ∫ (Φ(t(m) w) − Φ(d w)) f_W(w) dw` if d < t(m), else 0.
pub fn rho_one_bound(problem: &BoundProblem, method: &SelectionMethod, tol: Tolerance) -> Result<f64> {
    let d = method.threshold_d(problem.n, problem.p)?;
    rho_one_bound_at_threshold(problem.m(), problem.alpha, d, tol)
}

pub fn rho_one_bound_at_threshold(m: u64, alpha: f64, d: f64, tol: Tolerance) -> Result<f64> {
    let t = t_quantile(m, alpha)?;
    if d >= t {
        return Ok(0.0);
    }
    let (w_lo, w_hi) = w_mass_interval(m, DEFAULT_W_TAIL_MASS);
    let cfg = QuadConfig {
        abs_tol: 0.25 * tol.abs_err,
        rel_tol: 1e-15,
        max_panels: OUTER_MAX_PANELS,
        initial_panels: 4,
    };
    let r = integrate(
        |w| {
            let fw = w_density(w, m).unwrap_or(0.0);
            // Φ(tw) − Φ(dw) via the tail that avoids cancellation
            (norm_cdf(-d * w) - norm_cdf(-t * w)) * fw
        },
        w_lo.max(f64::MIN_POSITIVE),
        w_hi,
        &cfg,
    );
    if !r.converged {
        return Err(Error::QuadratureNonConvergence {
            estimate: 2.0 * r.value,
            achieved_err: 2.0 * r.abs_err,
            target_err: tol.abs_err,
        });
    }
    Ok((2.0 * r.value).clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(m: u64, rho: f64) -> BoundProblem {
        BoundProblem::from_m(0.05, 3, m, rho).unwrap()
    }

    #[test]
    fn interval_one() {
        let (l, u) = lower_upper_1(1.0, 5, 0.05).unwrap();
        assert!((u - 2.570_582).abs() < 1e-5);
        assert_eq!(l, -u);
        let (_, u2) = lower_upper_1(2.0, 5, 0.05).unwrap();
        assert!((u2 - 2.0 * u).abs() < 1e-14);
        assert!(lower_upper_1(0.0, 5, 0.05).is_err());
    }

    #[test]
    fn interval_two() {
        assert_eq!(lower_upper_2(0.7, 1.3, 1.0, 5, 0.05).unwrap(), (0.7, 0.7));
        let (l, u) = lower_upper_2(0.0, 1.0, 0.0, 5, 0.05).unwrap();
        // t(6) = 2.446912 at alpha 0.05, times sqrt(5/6)
        assert!((u - 2.446_912 * (5.0f64 / 6.0).sqrt()).abs() < 1e-5, "{u}");
        assert_eq!(l, -u);
        let (l, u) = lower_upper_2(-0.4, 0.8, 0.3, 12, 0.1).unwrap();
        assert!((0.5 * (l + u) - 0.3 * -0.4).abs() < 1e-15);
    }

    #[test]
    fn k_dagger_cases() {
        let pr = problem(5, 0.0);
        let a = k_dagger(0.3, 1.2, 2.0, 0.0, &pr).unwrap();
        let b = k_dagger(-4.0, 1.2, 0.1, 0.0, &pr).unwrap();
        assert_eq!(a, b);
        assert_eq!(k_dagger(0.9, 1.0, 0.9, 1.0, &pr).unwrap(), 1.0);
        let x = k_dagger(0.4, 0.9, 1.1, 0.6, &pr).unwrap();
        let y = k_dagger(2.0 * 1.1 - 0.4, 0.9, 1.1, -0.6, &pr).unwrap();
        assert!((x - y).abs() < 1e-15);
    }

    #[test]
    fn k_fn_matches_delta_form() {
        let pr = problem(7, 0.0);
        let t1 = t_quantile(8, 0.05).unwrap();
        for &(h, w, rho) in &[(0.5, 1.1, 0.6), (-1.2, 0.7, -0.3), (2.0, 1.9, 0.95)] {
            let via_psi = k_fn(h, w, h, rho, &pr).unwrap();
            let s = (1.0f64 - rho * rho).sqrt();
            let via_delta = delta(rho * h / s, restricted_half_width(t1, h, w, 7.0));
            assert!((via_psi - via_delta).abs() < 1e-13);
        }
        // both Ψ arguments degenerate at |rho| = 1: point interval at rho h,
        // point mass at rho (h − gamma)
        assert_eq!(k_fn(0.8, 1.0, 0.0, 1.0, &pr).unwrap(), 1.0);
        assert_eq!(k_fn(0.8, 1.0, 0.5, 1.0, &pr).unwrap(), 0.0);
    }

    #[test]
    fn rejects_rho_one() {
        let r = coverage_probability(&problem(5, 1.0), &SelectionMethod::CP, 1.0, Tolerance::default());
        assert!(matches!(r, Err(Error::RhoOneRedirect)));
    }

    #[test]
    fn clamps_near_one() {
        let r = coverage_probability(
            &problem(5, 1.0 - 1e-8),
            &SelectionMethod::CP,
            1.0,
            Tolerance::default(),
        )
        .unwrap();
        assert!(r.rho_clamped);
    }

    #[test]
    fn zero_threshold_is_nominal() {
        let ev = CoverageEvaluator::with_threshold(&problem(20, 0.8), 0.0, Tolerance::default()).unwrap();
        assert_eq!(ev.evaluate(1.0).unwrap().value, 0.95);
    }

    #[test]
    fn rho_one_zero_when_threshold_dominates() {
        // t(60) at alpha 0.17 is below sqrt 2
        let pr = BoundProblem::from_m(0.17, 2, 60, 1.0).unwrap();
        assert!(t_quantile(60, 0.17).unwrap() < std::f64::consts::SQRT_2);
        assert_eq!(rho_one_bound(&pr, &SelectionMethod::CP, Tolerance::default()).unwrap(), 0.0);
    }
}
