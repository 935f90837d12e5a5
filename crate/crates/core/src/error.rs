use thiserror::Error;

/// Errors raised by the numeric kernels and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("singular matrix: zero pivot in column {col}")]
    Singular { col: usize },

    #[error("QR iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("ill-posed Sylvester equation: {0}")]
    IllPosed(String),

    #[error("solve strategy not permitted: {0}")]
    Strategy(String),

    #[error("argument outside the admissible domain: {0}")]
    Domain(String),

    #[error("size out of range: {0}")]
    Size(String),

    #[error("quadrature did not reach tolerance: {0}")]
    Integration(String),

    #[error("series did not converge: {0}")]
    Convergence(String),

    #[error("{0} is not an element of the weighted algebra")]
    NotInAlgebra(String),

    #[error("lambda = {0} lies outside the region where the resolvent formula holds")]
    OutsideOmega(String),

    #[error("spectrum hit: {0}")]
    SpectrumHit(String),

    #[error("integrand is near-singular: {0}")]
    NearSingularIntegrand(String),

    #[error("iteration step {step} failed: {source}")]
    StepFailure { step: usize, source: Box<Error> },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
