use thiserror::Error;

/// Errors raised anywhere in the lab.
///
/// Variants map one-to-one onto the failure modes named by each operation;
/// the CLI maps them onto exit codes (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("eigenvalue {re:.3e}{im:+.3e}i lies on the branch cut (-inf, 0]")]
    SpectrumOnCut { re: f64, im: f64 },

    #[error("resolvent is numerically singular at z = {re:.6e}{im:+.6e}i (condition {cond:.3e})")]
    SingularResolvent { re: f64, im: f64, cond: f64 },

    #[error("matrix is not positive definite: smallest eigenvalue {lambda_min:.6e} <= threshold {threshold:.6e}")]
    NotPositive { lambda_min: f64, threshold: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("embedding is ill-conditioned: cond(Q) = {cond:.3e}")]
    IllConditionedEmbedding { cond: f64 },

    #[error("real part of A is not positive: smallest eigenvalue {lambda_min:.6e}")]
    NotAccretive { lambda_min: f64 },

    #[error("invariant breach: {0}")]
    InvariantBreach(String),

    #[error("no certificate found (best margin {best_margin:.6e}, scale {scale:.6e})")]
    NoCertificateFound { best_margin: f64, scale: f64 },

    #[error("quadrature diverges: partial sums grew by a factor {growth:.3e} between refinements")]
    QuadratureDivergence { growth: f64 },

    #[error("certificate kind mismatch: {0}")]
    KindMismatch(String),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("no scaling exponent m <= {max_m} puts the numerical range inside |z - 1| < 1")]
    RangeScalingFailed { max_m: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoCertificateFound { .. } => 3,
            Error::Config(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
