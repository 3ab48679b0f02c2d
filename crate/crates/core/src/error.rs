use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite sample at index {index}")]
    NonFinite { index: usize },

    #[error("spectral data is not Hermitian: defect {defect:e} exceeds {tolerance:e}")]
    NotHermitian { defect: f64, tolerance: f64 },

    #[error("{what} does not decay at the boundary: {tail:e} of max amplitude in the outer band (threshold {threshold:e})")]
    TailViolation { what: String, tail: f64, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("kernel is trivial (zero L1 norm)")]
    TrivialKernel,

    #[error("kernel {0} has no integrable second derivative")]
    NoSecondDerivative(String),

    #[error("kernel assumption violated: {0}")]
    AssumptionViolated(String),

    #[error("non-finite value in Duhamel map at slice {slice} (outside the certified regime)")]
    BlowUp { slice: usize },

    #[error("Picard iteration did not reach {tol:e} within {max_iter} iterations (last residual {last:e})")]
    MaxIterations {
        max_iter: usize,
        tol: f64,
        last: f64,
        residuals: Vec<f64>,
    },

    #[error("measured contraction ratio {ratio:.6} exceeds kappa {kappa:.6} (slack {slack}) for 3 consecutive iterations")]
    RatioExceeded {
        ratio: f64,
        kappa: f64,
        slack: f64,
        residuals: Vec<f64>,
    },

    #[error("certificate does not hold (kappa = {kappa})")]
    Uncertified { kappa: f64 },

    #[error("window {index}: {source}")]
    Window {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("missing time-derivative slices")]
    MissingDerivative,

    #[error("parse error in {path}, line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
