use thiserror::Error;

/// Errors produced by response functions, quadrature, and the potential engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Adaptive quadrature exhausted its refinement budget. Carries the best
    /// estimate so callers can decide whether the tolerance actually mattered.
    #[error("quadrature failed to converge after {refinements} refinements (best estimate {best:e}, error estimate {err_estimate:e})")]
    QuadratureNonConvergence {
        best: f64,
        err_estimate: f64,
        refinements: usize,
    },

    /// The integrand returned NaN or +/-Inf.
    #[error("integrand returned a non-finite value at x = {abscissa:e}")]
    NonFiniteIntegrand { abscissa: f64 },

    /// A parameter is outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid argument that is not a physics domain issue (bad grid, etc.).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Atom fixture file could not be parsed.
    #[error("fixture parse error at line {line}: {message}")]
    FixtureParse { line: usize, message: String },

    /// Wraps a failure with the integration stage that produced it, so nested
    /// quadrature failures name the axis they came from.
    #[error("{stage} integration: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
