//! Trapezoid refinement on a finite window for smooth, exponentially
//! localized integrands (geometric convergence), with point-error carry.

use num_complex::Complex64;

use crate::kahan::{KahanComplexSum, KahanSum};
use crate::{Error, Result};

/// Integrates f over [lo, hi], halving the step until the estimate moves by
/// less than `target`. f returns (value, abs_error_bound) per point; the
/// returned error is the last refinement change plus the accumulated point
/// errors at the final step.
pub(crate) fn refine_trapezoid<F>(
    f: &F,
    lo: f64,
    hi: f64,
    target: f64,
    max_level: u32,
) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Result<(Complex64, f64)>,
{
    debug_assert!(hi > lo);
    let n0 = 32usize;
    let mut h = (hi - lo) / n0 as f64;
    let (v_lo, e_lo) = f(lo)?;
    let (v_hi, e_hi) = f(hi)?;
    let mut interior = KahanComplexSum::new();
    let mut point_err = KahanSum::new();
    point_err.add(0.5 * (e_lo + e_hi));
    for j in 1..n0 {
        let (v, e) = f(lo + j as f64 * h)?;
        interior.add(v);
        point_err.add(e);
    }
    let edge = 0.5 * (v_lo + v_hi);
    let mut est = h * (edge + interior.value());
    let mut change = f64::INFINITY;
    let mut n = n0;
    for _ in 0..max_level {
        for j in 0..n {
            let (v, e) = f(lo + (j as f64 + 0.5) * h)?;
            interior.add(v);
            point_err.add(e);
        }
        n *= 2;
        h /= 2.0;
        let refined = h * (edge + interior.value());
        change = (refined - est).norm();
        est = refined;
        if change <= target {
            return Ok((est, change + h * point_err.value()));
        }
    }
    Err(Error::NoConvergence {
        estimate: change,
        target,
    })
}
