use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A point or coefficient left the open half-plane `x > 0`.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    /// Catenoid solving was requested for coplanar circles.
    #[error("circles are coplanar (h = {h}); use the planar annulus instead")]
    UseCoplanar { h: f64 },

    #[error("insufficient mesh: requested {requested} eigenvalues from {unknowns} unknowns")]
    InsufficientMesh { requested: usize, unknowns: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("inconsistent input: {0}")]
    Inconsistency(String),

    /// Internal numerical failure (bracketing lost, non-finite values).
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Parse { path: String, message: String },
}

impl Error {
    /// `true` for errors caused by the caller's input rather than by the numerics.
    pub fn is_user_error(&self) -> bool {
        !matches!(self, Error::Numerical(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
