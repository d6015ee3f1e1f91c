use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix failed the density-operator invariants.
    #[error("invalid density operator: {0}")]
    InvalidState(String),

    /// The requested step size breaks the integrator accuracy contract.
    #[error("step size too large: {0}")]
    StepSize(String),

    #[error("integrator failure: {0}")]
    Integrator(String),

    /// A failure inside one stroke of a cycle (1-based stroke index).
    #[error("stroke {index}: {source}")]
    Stroke {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    /// Two routes that must agree exactly did not; signals a bug.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn in_stroke(self, index: usize) -> Self {
        Error::Stroke {
            index,
            source: Box::new(self),
        }
    }
}
