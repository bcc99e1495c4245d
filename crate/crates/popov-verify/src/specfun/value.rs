use num_complex::Complex64;

/// A computed complex value together with a certified absolute error bound
/// covering truncation plus the rounding model of the evaluation method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecialValue {
    pub value: Complex64,
    pub abs_error_bound: f64,
}

impl SpecialValue {
    pub fn new(value: Complex64, abs_error_bound: f64) -> Self {
        debug_assert!(abs_error_bound.is_finite() && abs_error_bound >= 0.0);
        Self {
            value,
            abs_error_bound,
        }
    }

    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            abs_error_bound: 0.0,
        }
    }

    pub fn from_real(value: f64, abs_error_bound: f64) -> Self {
        Self::new(Complex64::new(value, 0.0), abs_error_bound)
    }
}

/// Controls for the doubly-exponential / trapezoid quadratures on `(0, inf)`.
///
/// Refinement halves the step up to `max_level` times; each halving must
/// shrink the internal error estimate or the evaluation fails with
/// `NoConvergence`.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureControls {
    /// Maximum number of step halvings.
    pub max_level: u32,
    /// Absolute tolerance for the internal error estimate.
    pub target: f64,
}

impl Default for QuadratureControls {
    fn default() -> Self {
        Self {
            max_level: 14,
            target: 1e-13,
        }
    }
}

impl QuadratureControls {
    pub fn with_target(target: f64) -> Self {
        Self {
            target,
            ..Self::default()
        }
    }
}
