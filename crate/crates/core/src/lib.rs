//! Finite-sample upper bounds on the minimum coverage probability of the
//! naive confidence interval for `a' beta` after data-based model selection
//! in linear regression, with the large-sample limit and Monte Carlo
//! cross-checks.

pub mod asymptotic;
pub mod bound;
pub mod error;
pub mod mcsim;
pub mod minimize;
pub mod quad;
pub mod rules;
pub mod specialfn;

pub use asymptotic::{asymptotic_bound, asymptotic_coverage, asymptotic_coverage_bivariate, AsymptoticProblem};
pub use bound::{coverage_probability, rho_one_bound, CoverageEvaluator, CoverageResult};
pub use error::{Error, Result};
pub use minimize::{finite_bound, minimize_over_gamma, BoundResult, SearchConfig};
pub use rules::{BoundProblem, MethodKind, SelectionMethod};
pub use specialfn::Tolerance;
