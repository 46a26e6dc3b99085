use thiserror::Error;

/// Errors raised by construction, validation and computation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("not a matroid: {0}")]
    NotAMatroid(String),

    #[error("not a polymatroid: {0}")]
    NotAPolymatroid(String),

    #[error("subset {mask:#b} is not contained in a ground set of size {n}")]
    OutOfRange { mask: u64, n: usize },

    #[error("element {element} is not in a ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("operation `{0}` is not supported for polymatroids")]
    PolymatroidUnsupported(&'static str),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("enumeration budget exceeded: needs {needed} steps, limit is {limit}")]
    BudgetExceeded { needed: u128, limit: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("variable {0} is unbound")]
    UnboundVariable(String),

    #[error("cannot raise a non-unit to a negative power while substituting {0}")]
    NonUnitSubstitution(String),

    #[error("negative exponent survived where a polynomial was required: {0}")]
    NegativeExponent(String),

    #[error("zero raised to a negative power")]
    ZeroToNegativePower,

    #[error("json error: {0}")]
    Json(String),

    #[error("inconsistent subdivision nerve: {0}")]
    NerveInconsistent(String),

    #[error("unknown invariant `{0}`")]
    UnknownInvariant(String),
}

impl Error {
    /// Stable machine-readable tag, used in the CLI error stream.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameters(_) => "invalid-parameters",
            Error::NotAMatroid(_) => "not-a-matroid",
            Error::NotAPolymatroid(_) => "not-a-polymatroid",
            Error::OutOfRange { .. } => "out-of-range",
            Error::ElementOutOfRange { .. } => "out-of-range",
            Error::PolymatroidUnsupported(_) => "polymatroid-unsupported",
            Error::Unsupported(_) => "unsupported",
            Error::BudgetExceeded { .. } => "budget-exceeded",
            Error::Domain(_) => "domain-error",
            Error::UnboundVariable(_) => "unbound-variable",
            Error::NonUnitSubstitution(_) => "non-unit-substitution",
            Error::NegativeExponent(_) => "negative-exponent",
            Error::ZeroToNegativePower => "zero-to-negative-power",
            Error::Json(_) => "json-error",
            Error::NerveInconsistent(_) => "nerve-inconsistent",
            Error::UnknownInvariant(_) => "unknown-invariant",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
