//! Inverse check: the truncated vertical-line integral of the closed
//! Gamma.2F1 transform reproduces e^{-alpha x} J_{k/4-1/2}(beta x), with the
//! discarded tail certified by the Gamma.2F1 decay bound.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::forward::forward_closed_form;
use super::quad::refine_trapezoid;
use crate::identities::{make_report, EvaluationReport};
use crate::series::ValueWithBound;
use crate::specfun::bessel_j;
use crate::{Error, Result};

/// Truncated line integral on Re(s) = sigma with the decay model
/// |integrand(sigma + it)| <= 4 pi (t/2)^{sigma + k/4 - 1} e^{-(pi/2 - beta/alpha) t}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineIntegralSpec {
    pub sigma: f64,
    pub t_max: f64,
    /// polynomial exponent sigma + k/4 - 1 of the decay model
    pub exponent: f64,
    /// exponential rate pi/2 - beta/alpha of the decay model
    pub rate: f64,
}

impl LineIntegralSpec {
    pub fn new(sigma: f64, t_max: f64, k: u32, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > beta && beta > 0.0) {
            return Err(Error::InvalidSpec(format!(
                "requires alpha > beta > 0, got alpha = {alpha}, beta = {beta}"
            )));
        }
        let rate = PI / 2.0 - beta / alpha;
        if rate <= 0.0 {
            return Err(Error::InvalidSpec(format!(
                "decay rate pi/2 - beta/alpha = {rate} <= 0: tail not integrable"
            )));
        }
        if t_max <= 0.0 {
            return Err(Error::InvalidSpec(format!("requires T > 0, got {t_max}")));
        }
        Ok(LineIntegralSpec {
            sigma,
            t_max,
            exponent: sigma + k as f64 / 4.0 - 1.0,
            rate,
        })
    }

    /// Decay-model majorant at height t.
    pub fn bound_at(&self, t: f64) -> f64 {
        4.0 * PI * (t / 2.0).powf(self.exponent) * (-self.rate * t).exp()
    }

    /// int_{t_max}^inf of the majorant, via (1 + u/T)^p <= e^{pu/T}.
    pub fn tail_beyond(&self) -> f64 {
        let p = self.exponent.max(0.0);
        let denom = self.rate - p / self.t_max;
        if denom <= 0.0 {
            return f64::INFINITY;
        }
        self.bound_at(self.t_max) / denom
    }
}

/// (1/2 pi i) int_{sigma - iT}^{sigma + iT} F(s) x^{-s} ds vs
/// e^{-alpha x} J_{k/4-1/2}(beta x) at x = n_arg.
pub fn mellin_inverse_check(
    n_arg: f64,
    alpha: f64,
    beta: f64,
    k: u32,
    sigma: f64,
    t_max: f64,
    tol: f64,
) -> Result<EvaluationReport> {
    if n_arg <= 0.0 {
        return Err(Error::InvalidSpec(format!("requires x > 0, got {n_arg}")));
    }
    if sigma <= 0.25 {
        return Err(Error::InvalidSpec(format!(
            "requires sigma > 1/4, got {sigma}"
        )));
    }
    let spec = LineIntegralSpec::new(sigma, t_max, k, alpha, beta)?;
    let x = n_arg;
    let integrand = |t: f64| -> Result<(Complex64, f64)> {
        let s = Complex64::new(sigma, t);
        let f = forward_closed_form(s, alpha, beta, k)?;
        let power = Complex64::new(x, 0.0).powc(-s);
        Ok((power * f.value, power.norm() * f.abs_error_bound))
    };
    // conjugate symmetry: the full integral is (1/pi) Re int_0^T
    let (half, quad_err) = refine_trapezoid(&integrand, 0.0, t_max, tol / 8.0, 12)?;
    let tail = x.powf(-sigma) * spec.tail_beyond() / PI;
    let lhs = ValueWithBound {
        value: Complex64::new(half.re / PI, 0.0),
        tail_bound: quad_err / PI + tail,
        terms_used: 0,
    };
    let nu = k as f64 / 4.0 - 0.5;
    let j = bessel_j(nu, beta * x)?;
    let rhs = ValueWithBound {
        value: (-alpha * x).exp() * j.value,
        tail_bound: (-alpha * x).exp() * j.abs_error_bound,
        terms_used: 1,
    };
    Ok(make_report(lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_reproduces_the_kernel() {
        let rep =
            mellin_inverse_check(1.0, 1.5 * PI, 0.5 * PI, 2, 1.0, 40.0, 1e-6).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!(rep.abs_residual <= 1e-6, "{}", rep.abs_residual);
    }

    #[test]
    fn integrand_conjugate_symmetry_makes_it_real() {
        let (alpha, beta, k, sigma) = (1.5 * PI, 0.5 * PI, 2u32, 1.0);
        for t in [0.7, 3.0, 11.0] {
            let up = forward_closed_form(Complex64::new(sigma, t), alpha, beta, k).unwrap();
            let dn = forward_closed_form(Complex64::new(sigma, -t), alpha, beta, k).unwrap();
            assert!((up.value - dn.value.conj()).norm() < 1e-12 * up.value.norm().max(1e-30));
        }
        let rep = mellin_inverse_check(1.7, alpha, beta, k, sigma, 40.0, 1e-6).unwrap();
        assert_eq!(rep.lhs.value.im, 0.0);
    }

    #[test]
    fn tail_model_dominates_measured_integrand() {
        let (alpha, beta, k, sigma) = (1.5 * PI, 0.5 * PI, 2u32, 1.0);
        for t_max in [20.0, 40.0, 80.0] {
            let spec = LineIntegralSpec::new(sigma, t_max, k, alpha, beta).unwrap();
            let measured = forward_closed_form(Complex64::new(sigma, t_max), alpha, beta, k)
                .unwrap()
                .value
                .norm();
            assert!(
                measured <= spec.bound_at(t_max),
                "T = {t_max}: {measured} vs {}",
                spec.bound_at(t_max)
            );
        }
    }

    #[test]
    fn round_trip_at_three_points() {
        for x in [0.5, 1.0, 2.0] {
            let rep =
                mellin_inverse_check(x, 1.5 * PI, 0.5 * PI, 2, 1.0, 40.0, 1e-6).unwrap();
            assert!(rep.pass, "x = {x}: residual {}", rep.abs_residual);
        }
    }

    #[test]
    fn decay_rate_positive_on_admissible_ratios() {
        // alpha > beta already forces beta/alpha < 1 < pi/2, so every
        // admissible spec has a strictly positive decay rate
        for (alpha, beta) in [(2.0, 1.0), (1.0, 0.999), (10.0, 0.1)] {
            let spec = LineIntegralSpec::new(1.0, 40.0, 2, alpha, beta).unwrap();
            assert!(spec.rate > 0.0);
            assert!(spec.tail_beyond().is_finite());
        }
        assert!(LineIntegralSpec::new(1.0, 40.0, 2, 1.0, 2.0).is_err());
    }

    #[test]
    fn spec_guards() {
        assert!(mellin_inverse_check(1.0, 2.0, 1.0, 2, 0.1, 40.0, 1e-6).is_err());
        assert!(mellin_inverse_check(-1.0, 2.0, 1.0, 2, 1.0, 40.0, 1e-6).is_err());
        assert!(LineIntegralSpec::new(1.0, -3.0, 2, 2.0, 1.0).is_err());
    }
}
