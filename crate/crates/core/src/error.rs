use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument or parameter is outside the domain of the operation.
    #[error("invalid `{name}`: {reason}")]
    Domain { name: &'static str, reason: String },

    /// A bilateral sum hit its term budget before its tail bound fell below
    /// the requested tolerance.
    #[error("series truncated after {terms} terms without reaching tolerance (partial value {partial}, remaining tail bound {tail_bound})")]
    Truncation {
        partial: f64,
        terms: usize,
        tail_bound: f64,
    },

    /// An iterative kernel ran out of iterations.
    #[error("{0} failed to converge")]
    NonConvergence(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            name,
            reason: reason.into(),
        }
    }

    /// Whether the error is a validation failure (as opposed to a numerical one).
    pub fn is_validation(&self) -> bool {
        matches!(self, Error::Domain { .. })
    }
}
