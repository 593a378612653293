use thiserror::Error;

/// Errors raised by the solvers, the geometry reconstruction and the
/// problem runners.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum SlatError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("yield criterion violated: |tau_n| = {tau} exceeds k = {k}")]
    YieldViolation { tau: f64, k: f64 },

    #[error("zero pivot at order {order} while matching boundary coefficients")]
    Singular { order: usize },

    #[error("non-finite curvature at node ({i}, {j})")]
    NonFinite { i: usize, j: usize },

    #[error("integration accuracy: path discrepancy {discrepancy:e} exceeds {tolerance:e}")]
    Integration { discrepancy: f64, tolerance: f64 },

    #[error("geometry failure: {0}")]
    Geometry(String),
}

pub type Result<T> = std::result::Result<T, SlatError>;
