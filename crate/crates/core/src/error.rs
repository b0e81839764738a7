use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation points outside the distribution's mathematical type.
    #[error("Not all points in {points} lie in the distribution domain ({domain}).")]
    Domain { points: String, domain: String },

    #[error("expected points of dimension {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// The method has no analytic form and no decorator that imputes it.
    #[error("{method} is not available for {distribution}; {hint}")]
    CapabilityMissing {
        method: String,
        distribution: String,
        hint: String,
    },

    #[error("unknown parameter '{0}'")]
    UnknownParameter(String),

    #[error("Conflicting parametrisations detected. Only one of {{{}}} should be given.", .members.join(", "))]
    ConflictingParameterisation { members: Vec<String> },

    #[error("value {value} for parameter '{id}' does not lie in its support {support}")]
    SupportViolation {
        id: String,
        value: String,
        support: String,
    },

    #[error("parameter '{0}' cannot be set")]
    NotSettable(String),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("cannot construct distribution: {0}")]
    Construction(String),

    #[error("truncation interval ({lower}, {upper}] has zero probability mass")]
    DegenerateTruncation { lower: f64, upper: f64 },

    #[error("{what} did not converge (estimate {estimate}, error bound {error_bound})")]
    NumericFailure {
        what: String,
        estimate: f64,
        error_bound: f64,
    },

    #[error("{0}")]
    Unsupported(String),
}

impl Error {
    /// Numerical failures are distinguished from user errors by callers such
    /// as the CLI exit-code mapping.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::NumericFailure { .. })
    }
}
