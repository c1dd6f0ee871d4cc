use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A constructor argument violates a documented invariant.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A special function was evaluated outside its domain.
    #[error("domain error in {function}: {reason}")]
    Domain { function: &'static str, reason: String },

    /// The sampled spectrum has not decayed at the edges of the frequency window.
    #[error(
        "frequency window too narrow: edge magnitude is {edge_ratio:.3e} of peak \
         (needs < {threshold:.1e}); enlarge half_width (currently {half_width} rad/ns)"
    )]
    WindowTooNarrow {
        edge_ratio: f64,
        threshold: f64,
        half_width: f64,
    },

    /// Refining a quadrature changed the result by more than its tolerance.
    #[error("{quadrature} quadrature did not converge: relative change {change:.3e} > tolerance {tol:.1e}")]
    NotConverged {
        quadrature: &'static str,
        change: f64,
        tol: f64,
    },

    /// Automatic resolution selection would exceed the sample budget.
    #[error("{what} needs {needed} samples, above the limit of {limit}")]
    ResolutionLimit {
        what: &'static str,
        needed: usize,
        limit: usize,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures of the numerical machinery (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::WindowTooNarrow { .. } | Error::NotConverged { .. } | Error::ResolutionLimit { .. }
        )
    }
}
