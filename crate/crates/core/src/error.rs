use thiserror::Error;

/// Errors raised by the enclosure pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("eigenvalue iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported element order {0} (expected 3, 4 or 5)")]
    UnsupportedOrder(usize),

    #[error("bases are not defined on a common quadrature grid")]
    IncompatibleBases,

    #[error("resolvent (D - {mu}) is singular at x = {x}")]
    SingularResolvent { x: f64, mu: f64 },

    #[error("spectral parameter {mu} is not above the essential-spectrum bound {d}")]
    ResolventBoundary { mu: f64, d: f64 },

    #[error("model is unvalidated: {0}")]
    UnvalidatedModel(String),

    #[error("residual pencil degenerate at shift {sigma} after {attempts} attempts")]
    DegeneratePencil { sigma: f64, attempts: usize },

    #[error("admissibility violated: {0}")]
    AdmissibilityViolated(String),

    #[error("no eigenvalue crossing for index {index} on [{a}, {b}]")]
    NoSignChange { index: usize, a: f64, b: f64 },

    #[error("upper bound {upper} does not leave room below the gap bound {gap}")]
    GapBoundUnavailable { upper: f64, gap: f64 },

    #[error("only {found} data points above the precision floor (need 3)")]
    InsufficientPoints { found: usize },

    #[error("no exact spectrum available for model '{0}'")]
    NoOracle(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
