use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors reported by every evaluation routine. No routine signals failure
/// through a NaN.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Error {
    /// A parameter is outside the family's admissible range (`k ≤ 0`,
    /// `ν ≤ −k`, `c = 0` where a division by `c` is needed, ...).
    InvalidParameter(&'static str),
    /// The argument lies outside the function's domain.
    DomainError(&'static str),
    /// The result is not representable as a finite `f64`.
    Overflow,
    /// A series hit its term cap before reaching the requested tolerance.
    NonConvergence { terms: usize, last_term: f64 },
    /// Node doubling hit its refinement cap before two successive rules agreed.
    QuadratureFailure { nodes: usize, difference: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::DomainError(what) => write!(f, "domain error: {what}"),
            Error::Overflow => f.write_str("result is not representable as a finite f64"),
            Error::NonConvergence { terms, last_term } => write!(
                f,
                "series did not converge after {terms} terms (last term {last_term:e})"
            ),
            Error::QuadratureFailure { nodes, difference } => write!(
                f,
                "quadrature did not settle at {nodes} nodes (last change {difference:e})"
            ),
        }
    }
}

impl core::error::Error for Error {}
