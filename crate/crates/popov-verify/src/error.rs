use num_complex::Complex64;
use thiserror::Error;

/// Error type shared by every evaluator in the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Gamma or a hypergeometric parameter hit a pole.
    #[error("pole at {0}")]
    PoleAt(Complex64),

    /// A sequence value was requested beyond the configured table size.
    #[error("horizon overflow: index {index} exceeds configured maximum {max}")]
    HorizonOverflow { index: usize, max: usize },

    /// Neither evaluation path of a zeta-like series converges at this point.
    #[error("domain not covered: {0}")]
    DomainNotCovered(String),

    /// The ascending Bessel series lost too many digits to cancellation.
    #[error("argument {arg} out of range for the ascending series (cancellation {cancellation:.1e})")]
    RangeExceeded { arg: f64, cancellation: f64 },

    /// Quadrature refinement stalled before reaching the target.
    #[error("quadrature did not converge: estimate {estimate:.3e} above target {target:.3e}")]
    NoConvergence { estimate: f64, target: f64 },

    /// The requested tolerance would need more terms than the configured ceiling.
    #[error("tolerance {tol:.3e} unreachable within {ceiling} terms (tail bound {tail:.3e})")]
    TolUnreachable { tol: f64, ceiling: usize, tail: f64 },

    /// A series or identity specification violates its parameter domain.
    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    /// The Gamma-2F1 decay-threshold scan exhausted its search range.
    #[error("no threshold t0 <= {search_max} satisfies the inequality")]
    FailedToFindTau0 { search_max: f64 },
}

impl Error {
    /// CLI exit code class for this error (2 = domain, 3 = tolerance).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TolUnreachable { .. } => 3,
            _ => 2,
        }
    }
}
