use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An iterative procedure used up its step budget.
    #[error("{what} did not converge after {steps} steps{}", hint.map(|h| format!(" ({h})")).unwrap_or_default())]
    NonConvergence {
        what: &'static str,
        steps: usize,
        hint: Option<&'static str>,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("slope {slope:e} at x = {x} is below the guard {guard:e}")]
    ZeroSlope { x: f64, slope: f64, guard: f64 },

    #[error("invalid order {0}: at least one node is required")]
    InvalidOrder(usize),

    #[error("invalid interval [{a}, {b}]: need a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Failure while solving for the root with the given (1-based) index.
    #[error("root {index} of {order}: {source}")]
    Root {
        index: usize,
        order: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for failures caused by arguments outside a function's domain.
    pub fn is_domain(&self) -> bool {
        match self {
            Error::Domain(_)
            | Error::InvalidOrder(_)
            | Error::InvalidInterval { .. }
            | Error::InvalidInput(_)
            | Error::DimensionMismatch { .. } => true,
            Error::Root { source, .. } => source.is_domain(),
            _ => false,
        }
    }

    /// True for failures of an iteration to settle.
    pub fn is_non_convergence(&self) -> bool {
        match self {
            Error::NonConvergence { .. } | Error::ZeroSlope { .. } => true,
            Error::Root { source, .. } => source.is_non_convergence(),
            _ => false,
        }
    }
}
