use std::path::PathBuf;

/// Failures raised anywhere in the construction, classification or export
/// pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what}: argument {value} is outside the valid domain")]
    Domain { what: &'static str, value: f64 },

    #[error("parameter {t} is outside the curve domain [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("singular point of the immersion at (t, s) = ({t}, {s})")]
    Singular { t: f64, s: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    #[error("integrator failed at t = {t}: {reason}")]
    Integrator { t: f64, reason: String },

    #[error("radial equation reached a degenerate point at t = {t}: {reason}")]
    TurningPoint { t: f64, reason: String },

    #[error("curve has no declared period")]
    MissingPeriod,

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unknown gallery entry {name:?}; available: {available}")]
    UnknownGallery { name: String, available: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
