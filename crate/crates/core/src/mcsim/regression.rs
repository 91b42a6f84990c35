//! Brute-force regression simulator: generate `y = X beta + sigma eps`, pick a
//! submodel with one of the selection rules, and check whether the naive
//! t-interval for `theta = a' beta` computed from the chosen submodel covers.
//!
//! Coefficient indices are 0-based: the selectable coefficients are
//! `q..p`, and a subset `K` lists the coefficients restricted to zero.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{chunks, stream_rng, McEstimate};
use crate::error::{Error, Result};
use crate::rules::{MethodKind, SelectionMethod};
use crate::specialfn::t_quantile;

/// Indices (0-based, sorted) of coefficients set to zero.
pub type Subset = Vec<usize>;

/// Upper limit on `p` for exhaustive subset enumeration.
pub const MAX_P: usize = 12;

#[derive(Debug, Clone)]
pub struct SimDesign {
    x: DMatrix<f64>,
    a: DVector<f64>,
    q: usize,
    beta: DVector<f64>,
    sigma: f64,
    /// (X'X)^{-1}
    xtx_inv: DMatrix<f64>,
}

impl SimDesign {
    pub fn new(x: DMatrix<f64>, a: DVector<f64>, q: usize, beta: DVector<f64>, sigma: f64) -> Result<Self> {
        let (n, p) = x.shape();
        if p < 2 || p > MAX_P {
            return Err(Error::InvalidInput(format!("need 2 <= p <= {MAX_P}, got {p}")));
        }
        if n <= p {
            return Err(Error::InvalidInput(format!("need n > p, got n={n}, p={p}")));
        }
        if !(1..p).contains(&q) {
            return Err(Error::InvalidInput(format!("need 1 <= q < p, got q={q}, p={p}")));
        }
        if a.len() != p || beta.len() != p {
            return Err(Error::InvalidInput(format!(
                "a and beta must have length p={p}, got {} and {}",
                a.len(),
                beta.len()
            )));
        }
        if a.iter().all(|v| *v == 0.0) {
            return Err(Error::InvalidInput("a must be nonzero".into()));
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::InvalidInput(format!("sigma must be > 0, got {sigma}")));
        }
        let r = x.clone().qr().r();
        let scale = r.diagonal().iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        if r.diagonal().iter().any(|v| v.abs() <= 1e-12 * scale) {
            return Err(Error::SingularDesign("X does not have full column rank".into()));
        }
        let r_inv = r
            .try_inverse()
            .ok_or_else(|| Error::SingularDesign("X does not have full column rank".into()))?;
        let xtx_inv = &r_inv * r_inv.transpose();
        Ok(Self { x, a, q, beta, sigma, xtx_inv })
    }

    /// Orthonormal-column design with `q = p - 1` and `a` chosen so that
    /// `Corr(a' beta_hat, beta_hat_p) = rho` and `beta_p / sigma = gamma`.
    pub fn rho_targeted(n: usize, p: usize, rho: f64, gamma: f64, sigma: f64, seed: u64) -> Result<Self> {
        if !(rho.abs() <= 1.0) {
            return Err(Error::InvalidInput(format!("rho must lie in [-1, 1], got {rho}")));
        }
        if n <= p {
            return Err(Error::InvalidInput(format!("need n > p, got n={n}, p={p}")));
        }
        let mut rng = stream_rng(seed, u64::MAX);
        let raw = DMatrix::from_fn(n, p, |_, _| StandardNormal.sample(&mut rng));
        let x = raw.qr().q();
        let mut a = DVector::zeros(p);
        a[0] = (1.0 - rho * rho).max(0.0).sqrt();
        a[p - 1] += rho;
        let mut beta = DVector::from_element(p, 1.0);
        beta[p - 1] = gamma * sigma;
        Self::new(x, a, p - 1, beta, sigma)
    }

    pub fn with_beta(&self, beta: DVector<f64>, sigma: f64) -> Result<Self> {
        Self::new(self.x.clone(), self.a.clone(), self.q, beta, sigma)
    }

    pub fn n(&self) -> usize {
        self.x.nrows()
    }
    pub fn p(&self) -> usize {
        self.x.ncols()
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }
    pub fn a(&self) -> &DVector<f64> {
        &self.a
    }
    pub fn beta(&self) -> &DVector<f64> {
        &self.beta
    }
    pub fn sigma(&self) -> f64 {
        self.sigma
    }
    pub fn theta(&self) -> f64 {
        self.a.dot(&self.beta)
    }
    pub fn xtx_inv(&self) -> &DMatrix<f64> {
        &self.xtx_inv
    }

    /// Corr(a' beta_hat, beta_hat_j) in the full model.
    pub fn correlation(&self, j: usize) -> f64 {
        let va = self.xtx_inv.row(j).dot(&self.a.transpose());
        let v11 = (self.a.transpose() * &self.xtx_inv * &self.a)[(0, 0)];
        va / (v11 * self.xtx_inv[(j, j)]).sqrt()
    }

    /// Coefficients subject to selection.
    pub fn selectable(&self) -> Vec<usize> {
        (self.q..self.p()).collect()
    }

    /// One response vector `X beta + sigma eps`.
    pub fn draw_y<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> DVector<f64> {
        let eps = DVector::from_fn(self.n(), |_, _| StandardNormal.sample(rng));
        &self.x * &self.beta + eps * self.sigma
    }

    fn check_subset(&self, k: &[usize]) -> Result<()> {
        if k.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!("subset {k:?} must be sorted without repeats")));
        }
        if k.iter().any(|&j| j < self.q || j >= self.p()) {
            return Err(Error::InvalidInput(format!(
                "subset {k:?} must lie within {}..{}",
                self.q,
                self.p()
            )));
        }
        Ok(())
    }
}

/// Restricted least-squares fit for one subset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubsetState {
    pub k: Subset,
    pub rss_k: f64,
    /// p-vector; entries indexed by `k` are exactly zero.
    pub beta_hat_k: Vec<f64>,
    /// RSS_K / (n - p + |K|)
    pub s2_k: f64,
    /// Var(a' beta_hat_K) / sigma^2
    pub v_k: f64,
    /// |refit RSS_K − quadratic-form RSS_K| / RSS.
    pub identity_residual: f64,
}

/// Precomputed restricted fit: beta_R = proj * y.
#[derive(Debug, Clone)]
struct SubsetFit {
    kept: Vec<usize>,
    x_r: DMatrix<f64>,
    proj: DMatrix<f64>,
    a_r: DVector<f64>,
    v_k: f64,
}

impl SubsetFit {
    fn new(design: &SimDesign, k: &[usize]) -> Result<Self> {
        let p = design.p();
        let kept: Vec<usize> = (0..p).filter(|j| !k.contains(j)).collect();
        let x_r = design.x.select_columns(&kept);
        let qr = x_r.clone().qr();
        let r_inv = qr
            .r()
            .try_inverse()
            .ok_or_else(|| Error::SingularDesign(format!("reduced design for K={k:?} is singular")))?;
        let proj = &r_inv * qr.q().transpose();
        let a_r = DVector::from_iterator(kept.len(), kept.iter().map(|&j| design.a[j]));
        // v(K) = a_R' (X_R' X_R)^{-1} a_R = |R^{-T} a_R|^2
        let v_k = (r_inv.transpose() * &a_r).norm_squared();
        Ok(Self { kept, x_r, proj, a_r, v_k })
    }

    /// (beta_R, RSS_K)
    fn fit(&self, y: &DVector<f64>) -> (DVector<f64>, f64) {
        let b = &self.proj * y;
        let resid = y - &self.x_r * &b;
        (b, resid.norm_squared())
    }
}

fn identity_rss(design: &SimDesign, beta_full: &DVector<f64>, rss: f64, k: &[usize]) -> Result<f64> {
    if k.is_empty() {
        return Ok(rss);
    }
    let hb = DVector::from_iterator(k.len(), k.iter().map(|&j| beta_full[j]));
    let c = design.xtx_inv.select_rows(k).select_columns(k);
    let chol = c
        .cholesky()
        .ok_or_else(|| Error::SingularDesign("H_K (X'X)^{-1} H_K' is not positive definite".into()))?;
    let sol = chol.solve(&hb);
    Ok(rss + hb.dot(&sol))
}

/// Restricted fit for subset `k` by direct refit, with the quadratic-form
/// identity `RSS_K = RSS + (H_K b)'(H_K (X'X)^{-1} H_K')^{-1} H_K b` recorded
/// as a cross-check.
pub fn rss_subset(design: &SimDesign, y: &DVector<f64>, k: &[usize]) -> Result<SubsetState> {
    design.check_subset(k)?;
    if y.len() != design.n() {
        return Err(Error::InvalidInput(format!("y has length {}, expected {}", y.len(), design.n())));
    }
    let full = SubsetFit::new(design, &[])?;
    let (beta_full, rss) = full.fit(y);
    let fit = SubsetFit::new(design, k)?;
    let (b_r, rss_k) = fit.fit(y);
    let via_identity = identity_rss(design, &beta_full, rss, k)?;
    let mut beta_hat_k = vec![0.0; design.p()];
    for (i, &j) in fit.kept.iter().enumerate() {
        beta_hat_k[j] = b_r[i];
    }
    let df = (design.n() - design.p() + k.len()) as f64;
    Ok(SubsetState {
        k: k.to_vec(),
        rss_k,
        beta_hat_k,
        s2_k: rss_k / df,
        v_k: fit.v_k,
        identity_residual: (rss_k - via_identity).abs() / rss,
    })
}

/// A family of candidate subsets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateFamily {
    members: Vec<Subset>,
}

impl CandidateFamily {
    /// All subsets of `indices`, including the empty set.
    pub fn all_subsets(indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let mut members = Vec::with_capacity(1 << idx.len());
        for mask in 0u32..(1u32 << idx.len()) {
            let s: Subset = idx
                .iter()
                .enumerate()
                .filter(|(b, _)| mask & (1 << b) != 0)
                .map(|(_, &j)| j)
                .collect();
            members.push(s);
        }
        Self::explicit(members).expect("power set is nonempty")
    }

    /// `{ {}, {p-1} }`: selection applied to the last coefficient only.
    pub fn last_only(p: usize) -> Self {
        Self::all_subsets(&[p - 1])
    }

    pub fn explicit(mut members: Vec<Subset>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::InvalidInput("candidate family must be nonempty".into()));
        }
        for m in members.iter_mut() {
            m.sort_unstable();
            m.dedup();
        }
        // canonical order: smaller |K| first, then lexicographic
        members.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        members.dedup();
        Ok(Self { members })
    }

    pub fn members(&self) -> &[Subset] {
        &self.members
    }

    /// Union of all member subsets.
    pub fn indices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.members.iter().flatten().copied().collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Selection engine with cached per-subset fits.
#[derive(Debug, Clone)]
struct Selector {
    method: SelectionMethod,
    n: usize,
    p: usize,
    fits: BTreeMap<Subset, SubsetFit>,
    family: CandidateFamily,
    /// threshold for the t-test rule
    t_crit: f64,
}

struct Chosen<'a> {
    k: &'a Subset,
    beta_r: DVector<f64>,
    rss_k: f64,
}

impl Selector {
    fn new(design: &SimDesign, method: SelectionMethod, family: CandidateFamily) -> Result<Self> {
        let mut fits = BTreeMap::new();
        fits.insert(Vec::new(), SubsetFit::new(design, &[])?);
        for k in family.members() {
            design.check_subset(k)?;
            if !fits.contains_key(k) {
                fits.insert(k.clone(), SubsetFit::new(design, k)?);
            }
        }
        let (n, p) = (design.n(), design.p());
        let t_crit = match method.test_size() {
            Some(size) => t_quantile((n - p) as u64, size)?,
            None => f64::NAN,
        };
        Ok(Self { method, n, p, fits, family, t_crit })
    }

    fn criterion(&self, rss_k: f64, rss: f64, k_len: usize) -> f64 {
        let (n, p) = (self.n as f64, self.p as f64);
        let kept = p - k_len as f64;
        match self.method.kind() {
            MethodKind::Aic | MethodKind::Bic => {
                let f = self.method.penalty_factor(self.n as u64).expect("AIC-like");
                n * rss_k.ln() + 2.0 * kept * f
            }
            MethodKind::Cp => rss_k / (rss / (n - p)) - n + 2.0 * kept,
            MethodKind::AdjR2 => rss_k / (n - p + k_len as f64),
            MethodKind::TTest => unreachable!("t-test rule has no criterion"),
        }
    }

    fn select(&self, design: &SimDesign, y: &DVector<f64>) -> Chosen<'_> {
        let full = &self.fits[&Vec::new()];
        let (b_full, rss) = full.fit(y);
        if self.method.kind() == MethodKind::TTest {
            let s = (rss / (self.n - self.p) as f64).sqrt();
            let accepted: Subset = self
                .family
                .indices()
                .into_iter()
                .filter(|&j| (b_full[j] / (s * design.xtx_inv[(j, j)].sqrt())).abs() < self.t_crit)
                .collect();
            let (key, fit) = self
                .fits
                .get_key_value(&accepted)
                .or_else(|| {
                    // acceptance set outside an explicit family: fall back to the full model
                    self.fits.get_key_value(&Vec::new())
                })
                .expect("full model fit present");
            let (beta_r, rss_k) = fit.fit(y);
            return Chosen { k: key, beta_r, rss_k };
        }
        let mut best: Option<(f64, &Subset, DVector<f64>, f64)> = None;
        for k in self.family.members() {
            let (beta_r, rss_k) = if k.is_empty() { (b_full.clone(), rss) } else { self.fits[k].fit(y) };
            let c = self.criterion(rss_k, rss, k.len());
            // members are in (|K|, lexicographic) order, so strict < keeps the tie-break
            if best.as_ref().map_or(true, |(bc, ..)| c < *bc) {
                best = Some((c, k, beta_r, rss_k));
            }
        }
        let (_, k, beta_r, rss_k) = best.expect("family is nonempty");
        Chosen { k, beta_r, rss_k }
    }

    /// Naive interval for the chosen subset.
    fn interval(&self, chosen: &Chosen<'_>, t_by_df: &BTreeMap<usize, f64>) -> (f64, f64) {
        let fit = &self.fits[chosen.k];
        let df = self.n - self.p + chosen.k.len();
        let centre = fit.a_r.dot(&chosen.beta_r);
        let half = t_by_df[&df] * (chosen.rss_k / df as f64).sqrt() * fit.v_k.sqrt();
        (centre - half, centre + half)
    }
}

/// Pick a subset from `candidates` with the given rule. Criterion ties go to
/// the smaller |K|, then the lexicographically smaller subset.
pub fn select_model(
    design: &SimDesign,
    y: &DVector<f64>,
    method: &SelectionMethod,
    candidates: &CandidateFamily,
) -> Result<Subset> {
    let sel = Selector::new(design, *method, candidates.clone())?;
    Ok(sel.select(design, y).k.clone())
}

/// Naive interval I(K) = a' beta_hat_K ± t(n − p + |K|) S_K sqrt(v(K)).
pub fn naive_interval(design: &SimDesign, y: &DVector<f64>, k: &[usize], alpha: f64) -> Result<(f64, f64)> {
    let st = rss_subset(design, y, k)?;
    let df = design.n() - design.p() + k.len();
    let t = t_quantile(df as u64, alpha)?;
    let centre: f64 = st.beta_hat_k.iter().zip(design.a.iter()).map(|(b, a)| b * a).sum();
    let half = t * st.s2_k.sqrt() * st.v_k.sqrt();
    Ok((centre - half, centre + half))
}

/// Empirical coverage of the naive interval after selection over `family`.
pub fn simulate_coverage(
    design: &SimDesign,
    method: &SelectionMethod,
    alpha: f64,
    family: &CandidateFamily,
    reps: usize,
    seed: u64,
) -> Result<McEstimate> {
    let sel = Selector::new(design, *method, family.clone())?;
    let (n, p) = (design.n(), design.p());
    let mut t_by_df = BTreeMap::new();
    for extra in 0..=p {
        t_by_df.insert(n - p + extra, t_quantile((n - p + extra) as u64, alpha)?);
    }
    let theta = design.theta();
    let hits: u64 = chunks(reps)
        .into_par_iter()
        .enumerate()
        .map(|(i, len)| {
            let mut rng = stream_rng(seed, i as u64);
            let mut hits = 0u64;
            for _ in 0..len {
                let y = design.draw_y(&mut rng);
                let chosen = sel.select(design, &y);
                let (lo, hi) = sel.interval(&chosen, &t_by_df);
                hits += (lo <= theta && theta <= hi) as u64;
            }
            hits
        })
        .sum();
    Ok(McEstimate::from_counts(hits, reps))
}

/// One grid point of [`empirical_min_coverage`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageRow {
    pub beta: Vec<f64>,
    /// Selection over all subsets of the selectable coefficients.
    pub full: McEstimate,
    /// Selection over `{ {}, {p-1} }` only.
    pub restricted: McEstimate,
}

/// Empirical coverage over a grid of coefficient vectors, for full-family
/// selection and for selection applied to the last coefficient only.
pub fn empirical_min_coverage(
    design: &SimDesign,
    method: &SelectionMethod,
    alpha: f64,
    beta_grid: &[Vec<f64>],
    reps: usize,
    seed: u64,
) -> Result<Vec<CoverageRow>> {
    if reps == 0 {
        return Ok(Vec::new());
    }
    let full_family = CandidateFamily::all_subsets(&design.selectable());
    let last = CandidateFamily::last_only(design.p());
    beta_grid
        .iter()
        .map(|beta| {
            let d = design.with_beta(DVector::from_column_slice(beta), design.sigma)?;
            Ok(CoverageRow {
                beta: beta.clone(),
                full: simulate_coverage(&d, method, alpha, &full_family, reps, seed)?,
                restricted: simulate_coverage(&d, method, alpha, &last, reps, seed)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcsim::stream_rng;

    fn random_design(n: usize, p: usize, q: usize, seed: u64) -> SimDesign {
        let mut rng = stream_rng(seed, 1);
        let x = DMatrix::from_fn(n, p, |_, _| StandardNormal.sample(&mut rng));
        let a = DVector::from_fn(p, |_, _| StandardNormal.sample(&mut rng));
        let beta = DVector::from_fn(p, |_, _| StandardNormal.sample(&mut rng));
        SimDesign::new(x, a, q, beta, 1.3).unwrap()
    }

    #[test]
    fn empty_subset_is_unrestricted() {
        let d = random_design(20, 4, 1, 5);
        let y = d.draw_y(&mut stream_rng(1, 0));
        let st = rss_subset(&d, &y, &[]).unwrap();
        assert_eq!(st.identity_residual, 0.0);
        let full = SubsetFit::new(&d, &[]).unwrap().fit(&y).1;
        assert_eq!(st.rss_k, full);
    }

    #[test]
    fn identity_and_nesting() {
        let d = random_design(25, 5, 1, 8);
        let y = d.draw_y(&mut stream_rng(2, 0));
        let a = rss_subset(&d, &y, &[3]).unwrap();
        let b = rss_subset(&d, &y, &[2, 3]).unwrap();
        let c = rss_subset(&d, &y, &[1, 2, 3, 4]).unwrap();
        for s in [&a, &b, &c] {
            assert!(s.identity_residual <= 1e-10);
            for &j in &s.k {
                assert_eq!(s.beta_hat_k[j], 0.0);
            }
        }
        assert!(a.rss_k <= b.rss_k && b.rss_k <= c.rss_k);
    }

    #[test]
    fn rejects_bad_inputs() {
        let d = random_design(12, 3, 1, 1);
        let y = DVector::zeros(12);
        assert!(rss_subset(&d, &y, &[0]).is_err());
        assert!(rss_subset(&d, &y, &[2, 1]).is_err());
        let x = DMatrix::from_fn(10, 3, |i, j| if j == 2 { i as f64 } else { (i * (j + 1)) as f64 });
        let r = SimDesign::new(x, DVector::from_element(3, 1.0), 1, DVector::zeros(3), 1.0);
        assert!(matches!(r, Err(Error::SingularDesign(_))));
    }

    #[test]
    fn singleton_family() {
        let d = random_design(15, 3, 1, 4);
        let y = d.draw_y(&mut stream_rng(3, 0));
        let fam = CandidateFamily::explicit(vec![vec![]]).unwrap();
        for m in [SelectionMethod::AIC, SelectionMethod::CP, SelectionMethod::ADJR2] {
            assert_eq!(select_model(&d, &y, &m, &fam).unwrap(), Vec::<usize>::new());
        }
    }

    #[test]
    fn criterion_recomputes_from_states() {
        let d = random_design(18, 4, 1, 6);
        let y = d.draw_y(&mut stream_rng(4, 0));
        let fam = CandidateFamily::all_subsets(&d.selectable());
        let chosen = select_model(&d, &y, &SelectionMethod::CP, &fam).unwrap();
        let rss = rss_subset(&d, &y, &[]).unwrap().rss_k;
        let (n, p) = (18.0, 4.0);
        let cp = |k: &Subset| {
            let st = rss_subset(&d, &y, k).unwrap();
            st.rss_k / (rss / (n - p)) - n + 2.0 * (p - k.len() as f64)
        };
        let best = fam.members().iter().map(cp).fold(f64::INFINITY, f64::min);
        assert!((cp(&chosen) - best).abs() < 1e-9);
    }

    #[test]
    fn full_model_interval_is_textbook() {
        let d = random_design(16, 3, 1, 7);
        let y = d.draw_y(&mut stream_rng(5, 0));
        let (lo, hi) = naive_interval(&d, &y, &[], 0.05).unwrap();
        let xtx = d.x().transpose() * d.x();
        let b = xtx.clone().cholesky().unwrap().solve(&(d.x().transpose() * &y));
        let rss = (&y - d.x() * &b).norm_squared();
        let s = (rss / 13.0).sqrt();
        let se = s * (d.a().transpose() * xtx.try_inverse().unwrap() * d.a())[(0, 0)].sqrt();
        let t = t_quantile(13, 0.05).unwrap();
        let c = d.a().dot(&b);
        assert!((lo - (c - t * se)).abs() < 1e-9 && (hi - (c + t * se)).abs() < 1e-9);
    }

    #[test]
    fn interval_equivariance() {
        // shifting y by X delta with delta_K = 0 shifts I(K) by a' delta
        let d = random_design(20, 4, 1, 9);
        let y = d.draw_y(&mut stream_rng(6, 0));
        let k = vec![2];
        let mut delta = DVector::from_vec(vec![0.3, -1.2, 0.0, 2.5]);
        delta[2] = 0.0;
        let y2 = &y + d.x() * &delta;
        let (l1, h1) = naive_interval(&d, &y, &k, 0.1).unwrap();
        let (l2, h2) = naive_interval(&d, &y2, &k, 0.1).unwrap();
        let shift = d.a().dot(&delta);
        assert!((l2 - l1 - shift).abs() < 1e-9 && (h2 - h1 - shift).abs() < 1e-9);
    }

    #[test]
    fn rho_targeted_design_has_target_correlation() {
        let d = SimDesign::rho_targeted(25, 3, 0.8, 1.0, 2.0, 1).unwrap();
        assert!((d.correlation(2) - 0.8).abs() < 1e-12);
        assert_eq!(d.q(), 2);
        assert!((d.beta()[2] / (d.sigma() * d.xtx_inv()[(2, 2)].sqrt()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn zero_reps_is_empty() {
        let d = random_design(15, 3, 1, 2);
        let t = empirical_min_coverage(&d, &SelectionMethod::CP, 0.05, &[vec![0.0; 3]], 0, 1).unwrap();
        assert!(t.is_empty());
    }

    #[test]
    fn ttest_accepts_when_coefficients_are_zero() {
        let mut d = random_design(30, 3, 1, 3);
        d = d.with_beta(DVector::from_vec(vec![1.0, 0.0, 0.0]), 1.0).unwrap();
        let fam = CandidateFamily::all_subsets(&d.selectable());
        let m = SelectionMethod::t_test(0.05).unwrap();
        let mut hits = 0;
        let mut rng = stream_rng(10, 0);
        for _ in 0..400 {
            let y = d.draw_y(&mut rng);
            if select_model(&d, &y, &m, &fam).unwrap() == vec![1, 2] {
                hits += 1;
            }
        }
        // both nulls accepted with probability about 0.95^2 (tests are correlated)
        assert!(hits > 300, "{hits}");
    }
}
