//! Riesz-sum identity: the smoothed partial sum of r_k against the pi-power
//! main term plus a slowly convergent Bessel-J series.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{make_report, EvaluationReport};
use crate::arith::rk_table;
use crate::kahan::KahanSum;
use crate::series::{riesz_sum, ValueWithBound};
use crate::specfun::{bessel_j, gamma_raw};
use crate::{Error, Result};

/// Number of right-side terms. The J-series decays only polynomially with
/// oscillatory cancellation, so the cutoff is fixed and the remainder is
/// estimated by the magnitude of the last completed oscillation arc.
const RIESZ_TERMS: usize = 40_000;

pub fn verify_riesz(k: u32, q: f64, x: f64, tol: f64) -> Result<EvaluationReport> {
    if x <= 0.0 {
        return Err(Error::InvalidSpec(format!("requires x > 0, got {x}")));
    }
    if q <= (k as f64 - 1.0) / 2.0 {
        return Err(Error::InvalidSpec(format!(
            "requires q > (k-1)/2 for absolute convergence, got q = {q}, k = {k}"
        )));
    }
    let lhs = ValueWithBound::exact(Complex64::new(riesz_sum(k, q, x)?, 0.0));

    let kf = k as f64;
    let main = PI.powf(kf / 2.0) * x.powf(kf / 2.0 + q)
        / gamma_raw(Complex64::new(q + 1.0 + kf / 2.0, 0.0)).re;
    let order = kf / 2.0 + q;
    let mut sum = KahanSum::new();
    let mut eval_err = 0.0;
    // magnitude of terms over the final argument-period, used as the
    // remainder estimate for the alternating-arc tail
    let mut arc = KahanSum::new();
    let arc_start_arg = 2.0 * PI * (RIESZ_TERMS as f64 * x).sqrt() - PI;
    let table = rk_table(k, RIESZ_TERMS);
    for n in 1..=RIESZ_TERMS {
        let r = table[n] as f64;
        if r == 0.0 {
            continue;
        }
        let t = 2.0 * PI * (n as f64 * x).sqrt();
        let j = bessel_j(order, t)?;
        let factor = r * (x / n as f64).powf(kf / 4.0 + q / 2.0);
        let term = factor * PI.powf(-q) * j.value.re;
        sum.add(term);
        eval_err += factor.abs() * PI.powf(-q) * j.abs_error_bound;
        if t >= arc_start_arg {
            arc.add(term.abs());
        }
    }
    let rhs = ValueWithBound {
        value: Complex64::new(main + sum.value(), 0.0),
        tail_bound: eval_err + arc.value(),
        terms_used: RIESZ_TERMS,
    };
    Ok(make_report(lhs, rhs, tol))
}
