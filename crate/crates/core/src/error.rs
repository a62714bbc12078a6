use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every module in the crate.
///
/// Each variant carries a stable machine-readable `code` so frontends can
/// report errors without string-matching the human text.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Evaluation hit a pole (denominator modulus at or below the pole tolerance).
    #[error("pole encountered at z = {at}")]
    Pole { at: Complex64 },

    /// A construction degenerated (coincident points, vanishing denominator in a
    /// derived formula, zero-determinant coefficient matrix).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// Input outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Iterative solver exhausted its iteration budget.
    #[error("no convergence after {iterations} iterations")]
    Convergence { iterations: u32 },

    /// No classification matched within the configured tolerances.
    #[error("ambiguous classification: {0}")]
    AmbiguousClassification(String),

    /// Two independent classification routes disagreed outside the tolerance band.
    #[error("inconsistent classification: {0}")]
    InconsistentClassification(String),

    /// Backward-orbit sampling has no repelling boundary fixed point to start from.
    #[error("no repelling boundary fixed point to seed the backward orbit")]
    NoRepellingFixedPoint,

    /// Parameter angle lies on the excluded set where the curve touches the unit circle.
    #[error("theta = {theta} lies on the excluded set where |w| = 1")]
    ExcludedPoint { theta: f64 },

    /// A textual value could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier for diagnostics ("pole", "degenerate", ...).
    pub fn code(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::Degenerate(_) => "degenerate",
            Error::Domain(_) => "domain",
            Error::Convergence { .. } => "convergence",
            Error::AmbiguousClassification(_) => "ambiguous-classification",
            Error::InconsistentClassification(_) => "inconsistent-classification",
            Error::NoRepellingFixedPoint => "no-repelling-fixed-point",
            Error::ExcludedPoint { .. } => "excluded-point",
            Error::Parse(_) => "parse",
        }
    }

    /// True for errors that signal bad usage rather than a mathematical
    /// degeneracy of valid input.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Domain(_))
    }
}
