use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the domain of the function (e.g. `Y0(u)` for `u <= 0`).
    #[error("{what}: argument {value} outside domain ({reason})")]
    Domain {
        what: &'static str,
        value: f64,
        reason: &'static str,
    },
    /// Genuine singularity of the map, such as `w'0` on the cone `N(X) = 0`.
    #[error("{what}: singular input ({reason})")]
    Singular { what: &'static str, reason: &'static str },
    /// A numerical stage did not reach its tolerance within its budget.
    #[error("{stage}: no convergence ({detail})")]
    NonConvergence { stage: &'static str, detail: String },
    /// Request outside the closed rewrite table of the K-type algebra.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(what: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain { what, value, reason }
    }

    pub(crate) fn no_convergence(stage: &'static str, detail: impl Into<String>) -> Self {
        Error::NonConvergence {
            stage,
            detail: detail.into(),
        }
    }
}
