//! The k = 1 contour form: the theta-cosine series minus its boundary term
//! against a vertical-line integral of Gamma.zeta.1F1 data on Re(s) = 1/4.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{make_report, EvaluationReport};
use crate::arith::riemann_zeta;
use crate::kahan::KahanSum;
use crate::series::ValueWithBound;
use crate::specfun::{gamma, hyp1f1};
use crate::{Error, Result};

/// Half-width of the integration window; |Gamma(1/4 + it)| ~ e^{-pi t / 2}
/// makes the discarded wings ~ 1e-27 here.
const T_MAX: f64 = 40.0;
/// Fine trapezoid step; the coarse (doubled) step provides the self-oracle
/// for the discretization error.
const H_FINE: f64 = 0.01;

fn theta_cos_sum(x: f64, z: f64, tol: f64) -> Result<ValueWithBound> {
    let b = (PI * x).sqrt() * z;
    let mut sum = KahanSum::new();
    let mut m = 1usize;
    loop {
        let mf = m as f64;
        sum.add((-PI * mf * mf * x).exp() * (b * mf).cos());
        let next = (m + 1) as f64;
        let head = (-PI * next * next * x).exp();
        let ratio = (-PI * x * (2.0 * next + 1.0)).exp();
        let tail = head / (1.0 - ratio);
        if tail <= tol {
            return Ok(ValueWithBound {
                value: Complex64::new(sum.value(), 0.0),
                tail_bound: tail,
                terms_used: m,
            });
        }
        m += 1;
        if m > 10_000 {
            return Err(Error::TolUnreachable {
                tol,
                ceiling: 10_000,
                tail,
            });
        }
    }
}

/// 2 x^{1/4} e^{z^2/8} sum_m e^{-pi m^2 x} cos(sqrt(pi x) m z) - x^{-1/4} e^{-z^2/8}
/// equals e^{z^2/8} pi^{-5/4} times the Re(s) = 1/4 line integral of
/// pi^{-it} Gamma(1/4 + it) zeta(1/2 + 2it) 1F1(1/4 + it; 1/2; -z^2/4) x^{-it}.
pub fn verify_popov_integral_k1(x: f64, z: f64, tol: f64) -> Result<EvaluationReport> {
    if x <= 0.0 {
        return Err(Error::InvalidSpec(format!("requires x > 0, got {x}")));
    }
    let e_plus = (z * z / 8.0).exp();
    let e_minus = (-z * z / 8.0).exp();
    let s = theta_cos_sum(x, z, 0.1 * tol / (2.0 * x.powf(0.25) * e_plus))?;
    let lhs = ValueWithBound {
        value: 2.0 * x.powf(0.25) * e_plus * s.value
            - Complex64::new(x.powf(-0.25) * e_minus, 0.0),
        tail_bound: 2.0 * x.powf(0.25) * e_plus * s.tail_bound,
        terms_used: s.terms_used,
    };

    let w = Complex64::new(-z * z / 4.0, 0.0);
    let integrand = |t: f64| -> Result<(Complex64, f64)> {
        let a = Complex64::new(0.25, t);
        let g = gamma(a)?;
        let zv = riemann_zeta(Complex64::new(0.5, 2.0 * t))?;
        let f = hyp1f1(a, Complex64::new(0.5, 0.0), w)?;
        let phase = Complex64::new(0.0, -t * (PI.ln() + x.ln())).exp();
        let value = phase * g.value * zv.value * f.value;
        let err = g.abs_error_bound * zv.value.norm() * f.value.norm()
            + g.value.norm() * zv.abs_error_bound * f.value.norm()
            + g.value.norm() * zv.value.norm() * f.abs_error_bound;
        Ok((value, err))
    };

    // f(-t) = conj(f(t)), so integrate 2 Re f over [0, T]
    let steps = (T_MAX / H_FINE).round() as usize;
    let mut samples = Vec::with_capacity(steps + 1);
    let mut eval_err = KahanSum::new();
    for i in 0..=steps {
        let (v, e) = integrand(i as f64 * H_FINE)?;
        samples.push(v.re);
        eval_err.add(e);
    }
    let trapezoid = |stride: usize| -> f64 {
        let h = H_FINE * stride as f64;
        let mut acc = KahanSum::new();
        let last = steps / stride;
        for j in 0..=last {
            let weight = if j == 0 || j == last { 0.5 } else { 1.0 };
            acc.add(weight * samples[j * stride]);
        }
        2.0 * h * acc.value()
    };
    let fine = trapezoid(1);
    let coarse = trapezoid(2);
    let (tail_tip, _) = integrand(T_MAX)?;
    // decay rate pi/2 from Stirling; factor 4 of safety on the wing model
    let wing = 2.0 * tail_tip.norm() * (2.0 / PI) * 4.0;
    let quad_err = (fine - coarse).abs() + wing + 2.0 * H_FINE * eval_err.value();

    let pref = e_plus * PI.powf(-1.25);
    let rhs = ValueWithBound {
        value: Complex64::new(pref * fine, 0.0),
        tail_bound: pref * quad_err,
        terms_used: steps + 1,
    };
    Ok(make_report(lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_integral_at_zero_z() {
        let rep = verify_popov_integral_k1(1.3, 0.0, 1e-6).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!(rep.abs_residual <= 1e-6 + rep.lhs.tail_bound + rep.rhs.tail_bound);
    }

    #[test]
    fn line_integral_generic_point() {
        let rep = verify_popov_integral_k1(0.9, 0.6, 1e-6).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
    }

    #[test]
    fn integral_is_real() {
        let rep = verify_popov_integral_k1(1.1, 0.4, 1e-6).unwrap();
        assert!(rep.rhs.value.im.abs() < 1e-12);
    }

    #[test]
    fn domain_guard() {
        assert!(verify_popov_integral_k1(-1.0, 0.0, 1e-6).is_err());
    }
}
