//! Direct simulation of `(G, H, W)`:
//! `(G, H)` bivariate normal with means `(0, gamma)`, unit variances and
//! correlation `rho`; `W = sqrt(Q/m)` with `Q ~ chi^2_m` independent of them.
//! The naive interval covers iff
//! `|H|/W >= d` and `l1(W) <= G <= u1(W)`, or
//! `|H|/W < d` and `l2(H, W) <= G <= u2(H, W)`.

use rand::Rng;
use rand_distr::{ChiSquared, Distribution, StandardNormal};
use rayon::prelude::*;

use super::{chunks, stream_rng, McEstimate};
use crate::error::{Error, Result};
use crate::rules::{BoundProblem, SelectionMethod};
use crate::specialfn::t_quantile;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AppendixCDraw {
    pub g: f64,
    pub h: f64,
    pub w: f64,
}

/// Sampler for `(G, H, W)` at fixed `(gamma, rho, m)`.
#[derive(Debug, Clone)]
pub struct DrawSampler {
    gamma: f64,
    rho: f64,
    s: f64,
    m: f64,
    chi: ChiSquared<f64>,
}

impl DrawSampler {
    pub fn new(gamma: f64, rho: f64, m: u64) -> Result<Self> {
        if !(rho.abs() <= 1.0) {
            return Err(Error::InvalidInput(format!("rho must lie in [-1, 1], got {rho}")));
        }
        let chi = ChiSquared::new(m as f64)
            .map_err(|e| Error::InvalidInput(format!("chi-square with {m} df: {e}")))?;
        Ok(Self {
            gamma,
            rho,
            s: (1.0 - rho * rho).max(0.0).sqrt(),
            m: m as f64,
            chi,
        })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> AppendixCDraw {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let q = self.chi.sample(rng);
        AppendixCDraw {
            g: self.rho * z1 + self.s * z2,
            h: self.gamma + z1,
            w: (q / self.m).sqrt(),
        }
    }
}

/// Monte Carlo estimate of the coverage probability with its standard error.
pub fn mc_coverage_c2(
    problem: &BoundProblem,
    method: &SelectionMethod,
    gamma: f64,
    n_draws: usize,
    seed: u64,
) -> Result<McEstimate> {
    let d = method.threshold_d(problem.n, problem.p)?;
    mc_coverage_at_threshold(problem, d, gamma, n_draws, seed)
}

pub fn mc_coverage_at_threshold(
    problem: &BoundProblem,
    d: f64,
    gamma: f64,
    n_draws: usize,
    seed: u64,
) -> Result<McEstimate> {
    let m = problem.m();
    let rho = problem.rho;
    let sampler = DrawSampler::new(gamma, rho, m)?;
    let t0 = t_quantile(m, problem.alpha)?;
    let t1 = t_quantile(m + 1, problem.alpha)?;
    let s = (1.0 - rho * rho).max(0.0).sqrt();
    let mf = m as f64;

    let hits: u64 = chunks(n_draws)
        .into_par_iter()
        .enumerate()
        .map(|(i, len)| {
            let mut rng = stream_rng(seed, i as u64);
            let mut hits = 0u64;
            for _ in 0..len {
                let AppendixCDraw { g, h, w } = sampler.sample(&mut rng);
                let covered = if h.abs() >= d * w {
                    g.abs() <= t0 * w
                } else {
                    let half = t1 * ((mf * w * w + h * h) / (mf + 1.0)).sqrt() * s;
                    (g - rho * h).abs() <= half
                };
                hits += covered as u64;
            }
            hits
        })
        .sum();
    Ok(McEstimate::from_counts(hits, n_draws))
}
