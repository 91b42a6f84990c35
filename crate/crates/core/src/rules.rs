//! Model-selection rules and their two-model thresholds.
//!
//! When selection is applied to a single coefficient `beta_p`, each rule
//! reduces to "keep `beta_p` iff |T| >= d" for a scalar `d` computed here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specialfn::t_quantile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MethodKind {
    Aic,
    Bic,
    Cp,
    AdjR2,
    TTest,
}

impl MethodKind {
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Aic => "aic",
            MethodKind::Bic => "bic",
            MethodKind::Cp => "cp",
            MethodKind::AdjR2 => "adjr2",
            MethodKind::TTest => "ttest",
        }
    }
}

impl FromStr for MethodKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "aic" => Ok(MethodKind::Aic),
            "bic" => Ok(MethodKind::Bic),
            "cp" => Ok(MethodKind::Cp),
            "adjr2" => Ok(MethodKind::AdjR2),
            "ttest" => Ok(MethodKind::TTest),
            other => Err(Error::InvalidInput(format!(
                "unknown selection method '{other}' (expected aic, bic, cp, adjr2 or ttest)"
            ))),
        }
    }
}

/// A selection rule. `test_size` is carried only by the t-test rule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectionMethod {
    kind: MethodKind,
    test_size: Option<f64>,
}

impl SelectionMethod {
    pub const AIC: Self = Self { kind: MethodKind::Aic, test_size: None };
    pub const BIC: Self = Self { kind: MethodKind::Bic, test_size: None };
    pub const CP: Self = Self { kind: MethodKind::Cp, test_size: None };
    pub const ADJR2: Self = Self { kind: MethodKind::AdjR2, test_size: None };

    pub fn t_test(test_size: f64) -> Result<Self> {
        if !(test_size > 0.0 && test_size < 1.0) {
            return Err(Error::InvalidInput(format!(
                "t-test size must lie in (0, 1), got {test_size}"
            )));
        }
        Ok(Self {
            kind: MethodKind::TTest,
            test_size: Some(test_size),
        })
    }

    /// Build from a kind; `test_size` is required for the t-test and
    /// rejected otherwise.
    pub fn new(kind: MethodKind, test_size: Option<f64>) -> Result<Self> {
        match (kind, test_size) {
            (MethodKind::TTest, Some(s)) => Self::t_test(s),
            (MethodKind::TTest, None) => Err(Error::InvalidInput(
                "the t-test rule needs a test size".into(),
            )),
            (_, Some(_)) => Err(Error::InvalidInput(format!(
                "test size only applies to ttest, not {}",
                kind.name()
            ))),
            (k, None) => Ok(Self { kind: k, test_size: None }),
        }
    }

    pub fn kind(&self) -> MethodKind {
        self.kind
    }

    pub fn test_size(&self) -> Option<f64> {
        self.test_size
    }

    /// f(n) of the AIC-like criterion: 1 for AIC, ½ ln n for BIC.
    pub fn penalty_factor(&self, n: u64) -> Option<f64> {
        match self.kind {
            MethodKind::Aic => Some(1.0),
            MethodKind::Bic => Some(0.5 * (n as f64).ln()),
            _ => None,
        }
    }

    /// Threshold `d`: `beta_p` is kept iff |T| >= d.
    pub fn threshold_d(&self, n: u64, p: u64) -> Result<f64> {
        if n <= p {
            return Err(Error::InvalidInput(format!("need n > p, got n={n}, p={p}")));
        }
        let m = (n - p) as f64;
        Ok(match self.kind {
            MethodKind::Cp => std::f64::consts::SQRT_2,
            MethodKind::AdjR2 => 1.0,
            MethodKind::Aic | MethodKind::Bic => {
                let f = self.penalty_factor(n).expect("AIC-like rule");
                ((2.0 * f / n as f64).exp_m1() * m).sqrt()
            }
            MethodKind::TTest => t_quantile(n - p, self.test_size.expect("t-test size"))?,
        })
    }

    /// Large-sample threshold d′, defined only for the conservative rules.
    pub fn asymptotic_d(&self) -> Result<f64> {
        match self.kind {
            MethodKind::Aic | MethodKind::Cp => Ok(std::f64::consts::SQRT_2),
            MethodKind::AdjR2 => Ok(1.0),
            MethodKind::Bic | MethodKind::TTest => Err(Error::NotApplicable(self.kind.name().into())),
        }
    }
}

impl fmt::Display for SelectionMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.test_size {
            Some(s) => write!(f, "{}({s})", self.kind.name()),
            None => f.write_str(self.kind.name()),
        }
    }
}

/// Everything the coverage formula needs besides `gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundProblem {
    pub alpha: f64,
    pub p: u64,
    pub n: u64,
    pub rho: f64,
}

impl BoundProblem {
    pub fn new(alpha: f64, p: u64, n: u64, rho: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!("alpha must lie in (0, 1), got {alpha}")));
        }
        if p < 2 {
            return Err(Error::InvalidInput(format!("need p >= 2, got {p}")));
        }
        if n <= p {
            return Err(Error::InvalidInput(format!("need n > p, got n={n}, p={p}")));
        }
        if !(rho.abs() <= 1.0) {
            return Err(Error::InvalidInput(format!("rho must lie in [-1, 1], got {rho}")));
        }
        Ok(Self { alpha, p, n, rho })
    }

    /// Build from residual degrees of freedom `m = n - p`.
    pub fn from_m(alpha: f64, p: u64, m: u64, rho: f64) -> Result<Self> {
        if m < 1 {
            return Err(Error::InvalidInput("need m = n - p >= 1".into()));
        }
        Self::new(alpha, p, p + m, rho)
    }

    pub fn m(&self) -> u64 {
        self.n - self.p
    }

    pub fn with_rho(&self, rho: f64) -> Result<Self> {
        Self::new(self.alpha, self.p, self.n, rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn fixed_thresholds() {
        assert_eq!(SelectionMethod::CP.threshold_d(30, 10).unwrap(), SQRT_2);
        assert_eq!(SelectionMethod::ADJR2.threshold_d(7, 3).unwrap(), 1.0);
    }

    #[test]
    fn aic_threshold() {
        let d = SelectionMethod::AIC.threshold_d(30, 10).unwrap();
        // sqrt((e^(1/15) - 1) * 20) evaluated in high precision
        assert!((d - 1.174_218).abs() < 1e-5, "{d}");
        // with p fixed, d increases towards sqrt 2 from below
        let mut prev = 0.0;
        for &n in &[20u64, 50, 200, 10_000] {
            let d = SelectionMethod::AIC.threshold_d(n, 10).unwrap();
            assert!(d > prev && d < SQRT_2);
            prev = d;
        }
        let far = SelectionMethod::AIC.threshold_d(10_000_000, 10).unwrap();
        assert!((far - SQRT_2).abs() < 1e-5);
        assert!(prev < SQRT_2 && SQRT_2 - prev < 2e-3);
    }

    #[test]
    fn bic_threshold_at_large_n() {
        let d = SelectionMethod::BIC.threshold_d(10_000, 10).unwrap();
        let direct = (((10_000f64).powf(1e-4) - 1.0) * 9_990.0).sqrt();
        assert!((d - direct).abs() < 1e-12);
        assert!(d > SQRT_2);
    }

    #[test]
    fn ttest_threshold_is_t_critical() {
        let m = SelectionMethod::t_test(0.05).unwrap();
        let d = m.threshold_d(25, 5).unwrap();
        assert!((d - t_quantile(20, 0.05).unwrap()).abs() < 1e-15);
        assert!(SelectionMethod::t_test(1.0).is_err());
        assert!(SelectionMethod::new(MethodKind::Cp, Some(0.1)).is_err());
    }

    #[test]
    fn rejects_n_not_above_p() {
        assert!(SelectionMethod::CP.threshold_d(10, 10).is_err());
    }

    #[test]
    fn asymptotic_thresholds() {
        assert_eq!(SelectionMethod::CP.asymptotic_d().unwrap(), SQRT_2);
        assert_eq!(SelectionMethod::AIC.asymptotic_d().unwrap(), SQRT_2);
        assert_eq!(SelectionMethod::ADJR2.asymptotic_d().unwrap(), 1.0);
        assert!(matches!(SelectionMethod::BIC.asymptotic_d(), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn threshold_ignores_rho_and_alpha() {
        // the signature has no rho or alpha; the same (n, p) always yields the same d
        let a = SelectionMethod::AIC.threshold_d(40, 4).unwrap();
        let b = SelectionMethod::AIC.threshold_d(40, 4).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_names() {
        assert_eq!("CP".parse::<MethodKind>().unwrap(), MethodKind::Cp);
        assert_eq!("AdjR2".parse::<MethodKind>().unwrap(), MethodKind::AdjR2);
        assert!("lasso".parse::<MethodKind>().is_err());
    }

    #[test]
    fn problem_validation() {
        assert!(BoundProblem::new(0.05, 1, 10, 0.5).is_err());
        assert!(BoundProblem::new(0.05, 3, 3, 0.5).is_err());
        assert!(BoundProblem::new(0.05, 3, 10, 1.5).is_err());
        assert_eq!(BoundProblem::from_m(0.05, 10, 20, 0.3).unwrap().n, 30);
    }
}
