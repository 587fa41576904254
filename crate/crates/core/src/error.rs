use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures reported by instances and by the generic engine.
///
/// `Hypothesis` means the caller's input did not satisfy a theorem's
/// assumptions. `Conclusion` means the inputs were fine but a step the
/// theory guarantees did not hold in the instance at hand; in an instance
/// that passes axiom verification this is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("morphisms are not composable: {0}")]
    NotComposable(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("conclusion failed: {0}")]
    Conclusion(String),
    #[error("instance does not support {0}")]
    Unsupported(&'static str),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl Error {
    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis(_) | Error::Precondition(_))
    }

    /// Re-labels a failure as a theorem conclusion failure at `step`.
    pub(crate) fn at_step(self, step: &str) -> Error {
        match self {
            Error::Precondition(m) | Error::Conclusion(m) => {
                Error::Conclusion(format!("{step}: {m}"))
            }
            other => other,
        }
    }
}
