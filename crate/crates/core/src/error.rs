use thiserror::Error;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An input fell outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Crystal parameters violate the model constraints.
    #[error("invalid crystal: {0}")]
    InvalidCrystal(String),

    /// Only the first band gap is supported.
    #[error("unsupported gap index {0}: only q = 1 is available")]
    UnsupportedGap(i64),

    /// Evaluation requested exactly at a singular point.
    #[error("singular input: {0}")]
    Singular(String),

    /// The atomic frequency lies on the wrong side of the band edge for
    /// this operation.
    #[error("detuning out of range: {0}")]
    Detuning(String),

    /// The quadrature engine exhausted its panel budget. Carries the best
    /// estimate obtained and the associated error bound.
    #[error("quadrature did not converge: best estimate {best:e} with error bound {error_bound:e}")]
    QuadratureNonconvergence { best: f64, error_bound: f64 },

    /// The pole iteration diverged or exceeded its iteration cap. Carries
    /// the iterate trace for diagnosis.
    #[error("pole iteration did not converge after {0} steps", trace.len())]
    PoleNonconvergence { trace: Vec<f64> },

    /// An internal consistency check failed (numerical noise outside the
    /// guarded range).
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
