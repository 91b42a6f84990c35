use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Adaptive quadrature ran out of panels before meeting its tolerance.
    #[error("quadrature did not converge: estimate {estimate}, achieved error {achieved_err:e} (target {target_err:e})")]
    QuadratureNonConvergence {
        estimate: f64,
        achieved_err: f64,
        target_err: f64,
    },

    /// The general evaluator is undefined at |rho| = 1.
    #[error("|rho| = 1 is handled by rho_one_bound, not coverage_probability")]
    RhoOneRedirect,

    /// Large-sample bounds exist only for conservative selection rules.
    #[error("the large-sample bound does not apply to {0} (consistent or non-conservative selection)")]
    NotApplicable(String),

    #[error("objective evaluation failed at gamma = {gamma}: {source}")]
    Objective {
        gamma: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("singular design: {0}")]
    SingularDesign(String),
}
