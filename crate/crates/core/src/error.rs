//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CasimirError {
    /// An argument violated a mathematical domain restriction (negative
    /// separation, zero relaxation in a Drude model, and so on).
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid configuration: inconsistent geometry weights, bad grids,
    /// malformed model parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// A series or quadrature failed to reach the requested tolerance.
    /// Carries the best estimate achieved and its error bound so callers
    /// can decide whether the partial result is still usable.
    #[error("convergence failure in {context}: achieved {achieved:e} with error bound {error_bound:e}")]
    Convergence {
        context: String,
        achieved: f64,
        error_bound: f64,
    },

    /// Malformed or physically inconsistent input data (CSV ingestion,
    /// dataset invariants).
    #[error("data error: {0}")]
    Data(String),

    /// The weighted least-squares normal equations are singular.
    #[error("degenerate fit design: {0}")]
    DegenerateFit(String),

    /// Parameters outside the regime where a formula applies (e.g. the
    /// patch-size window needs R > d).
    #[error("regime error: {0}")]
    Regime(String),

    /// No imperfection parameters bring the candidate model within 50%
    /// of the target force curve.
    #[error("no masquerade: best max relative deviation {best_deviation:.3} exceeds 0.5")]
    NoMasquerade { best_deviation: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CasimirError>;
