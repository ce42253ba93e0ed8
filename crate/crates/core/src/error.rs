use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    /// k0 = E0 + V0^2/2 (or its conical analogue) must be strictly positive.
    #[error("k0 must be positive (got k0 = {k0:.6e}); the inviscid family needs a positive amplitude constant")]
    NonPositiveAmplitude { k0: f64 },

    #[error("{count} sample point(s) fall outside the profile range [{lo}, {hi}] in xi = z/r; first offending (r, z) = ({first_r}, {first_z})")]
    OutOfDomain {
        count: usize,
        first_r: f64,
        first_z: f64,
        lo: f64,
        hi: f64,
        points: Vec<(f64, f64)>,
    },

    #[error("singular evaluation: {0}")]
    Singular(String),

    #[error("swirl normalisation failed: {0}")]
    SwirlNormalization(String),

    /// The Riccati integration escaped the configured bound before reaching x_max.
    #[error("blow-up: |theta_bar| exceeded {bound:e} at x = {x_escape:.9} (xi = {xi_escape:.6e})")]
    BlowUp {
        x_escape: f64,
        xi_escape: f64,
        bound: f64,
    },

    #[error("integrator stalled at x = {x:.9}: {reason}")]
    IntegratorStalled { x: f64, reason: String },

    #[error("fixed-point iteration did not converge in {iterations} sweeps (last change {last_change:.3e})")]
    MaxItersExceeded {
        iterations: usize,
        last_change: f64,
        history: Vec<f64>,
    },

    #[error("i/o error on {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Short machine-friendly name of the failure mode.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidProfile(_) => "invalid_profile",
            Error::NonPositiveAmplitude { .. } => "non_positive_k0",
            Error::OutOfDomain { .. } => "out_of_domain",
            Error::Singular(_) => "singular",
            Error::SwirlNormalization(_) => "swirl_normalization",
            Error::BlowUp { .. } => "blow_up",
            Error::IntegratorStalled { .. } => "integrator_stalled",
            Error::MaxItersExceeded { .. } => "max_iters_exceeded",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }
}
