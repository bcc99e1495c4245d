//! Forward Mellin transform checks: exponential-times-J and J-times-K pairs
//! against their closed Gamma.2F1 forms, by substituted trapezoid quadrature.

use num_complex::Complex64;

use super::quad::refine_trapezoid;
use crate::identities::{make_report, EvaluationReport};
use crate::series::ValueWithBound;
use crate::specfun::{bessel_j, bessel_k, gamma, gamma_raw, hyp2f1, QuadratureControls, SpecialValue};
use crate::{Error, Result};

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Closed form of int_0^inf x^{s-1} e^{-alpha x} J_{k/4-1/2}(beta x) dx:
/// (beta/2alpha)^nu alpha^{-s} Gamma(s+nu)/Gamma(nu+1)
///   2F1((s+nu)/2, (s+nu+1)/2; nu+1; -beta^2/alpha^2).
pub fn forward_closed_form(s: Complex64, alpha: f64, beta: f64, k: u32) -> Result<SpecialValue> {
    check_pair(s, alpha, beta, k)?;
    let nu = k as f64 / 4.0 - 0.5;
    let g = gamma(s + nu)?;
    let z = -(beta * beta) / (alpha * alpha);
    let f = hyp2f1((s + nu) / 2.0, (s + nu + 1.0) / 2.0, c_re(nu + 1.0), z)?;
    let front = (beta / (2.0 * alpha)).powf(nu) / gamma_raw(c_re(nu + 1.0)).re
        * c_re(alpha).powc(-s);
    Ok(SpecialValue::new(
        front * g.value * f.value,
        front.norm()
            * (g.abs_error_bound * f.value.norm() + g.value.norm() * f.abs_error_bound),
    ))
}

fn check_pair(s: Complex64, alpha: f64, beta: f64, k: u32) -> Result<()> {
    if !(alpha > beta && beta > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "requires alpha > beta > 0, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidSpec("requires k >= 1".into()));
    }
    if s.re <= 0.5 - k as f64 / 4.0 {
        return Err(Error::InvalidSpec(format!(
            "requires Re(s) > 1/2 - k/4, got {s}"
        )));
    }
    Ok(())
}

/// Quadrature of the forward integral (x = e^u substitution, so both ends
/// decay exponentially or faster) against `forward_closed_form`.
pub fn mellin_forward_check(
    s: Complex64,
    alpha: f64,
    beta: f64,
    k: u32,
    tol: f64,
) -> Result<EvaluationReport> {
    check_pair(s, alpha, beta, k)?;
    let nu = k as f64 / 4.0 - 0.5;
    let rho = s.re + nu; // decay rate of the substituted integrand at -inf
    let lo = -42.0 / rho;
    let hi = (48.0 / alpha).ln().max(1.0);
    let integrand = |u: f64| -> Result<(Complex64, f64)> {
        let x = u.exp();
        let damp = (-alpha * x).exp();
        if damp == 0.0 {
            return Ok((Complex64::new(0.0, 0.0), 0.0));
        }
        let j = bessel_j(nu, beta * x)?;
        let factor = (s * u).exp() * damp;
        Ok((factor * j.value, factor.norm() * j.abs_error_bound))
    };
    let (value, quad_err) = refine_trapezoid(&integrand, lo, hi, tol / 8.0, 12)?;
    // |J_nu(t)| <= 2^{-nu}/Gamma(nu+1) t^nu gives the left-wing model; the
    // right wing is crushed by e^{-alpha e^u} <= e^{-48} e^{-48(u-hi)}
    let c_j = 2f64.powf(-nu) / gamma_raw(c_re(nu + 1.0)).re;
    let left = c_j * beta.powf(nu) * (rho * lo).exp() / rho;
    let j_hi = if nu >= 0.0 {
        1.0
    } else {
        c_j * (beta * hi.exp()).powf(nu)
    };
    let right = j_hi * (s.re * hi).exp() * (-48.0f64).exp() / (48.0 - s.re.max(0.0));
    let lhs = ValueWithBound {
        value,
        tail_bound: quad_err + left + right,
        terms_used: 0,
    };
    let closed = forward_closed_form(s, alpha, beta, k)?;
    let rhs = ValueWithBound {
        value: closed.value,
        tail_bound: closed.abs_error_bound,
        terms_used: 1,
    };
    Ok(make_report(lhs, rhs, tol))
}

/// Closed form of int_0^inf x^{s-1} J_mu(beta x) K_nu(alpha x) dx:
/// 2^{s-2} beta^mu / (alpha^{s+mu} Gamma(mu+1))
///   Gamma((s+mu+nu)/2) Gamma((s+mu-nu)/2)
///   2F1((s+mu+nu)/2, (s+mu-nu)/2; mu+1; -beta^2/alpha^2).
pub fn jk_closed_form(
    s: Complex64,
    mu: f64,
    nu: Complex64,
    alpha: f64,
    beta: f64,
) -> Result<SpecialValue> {
    check_jk(s, mu, nu, alpha, beta)?;
    let a = (s + mu + nu) / 2.0;
    let b = (s + mu - nu) / 2.0;
    let ga = gamma(a)?;
    let gb = gamma(b)?;
    let z = -(beta * beta) / (alpha * alpha);
    let f = hyp2f1(a, b, c_re(mu + 1.0), z)?;
    let front = c_re(2.0).powc(s - 2.0) * beta.powf(mu) * c_re(alpha).powc(-(s + mu))
        / gamma_raw(c_re(mu + 1.0)).re;
    let gg = ga.value * gb.value;
    let gg_err = ga.abs_error_bound * gb.value.norm() + ga.value.norm() * gb.abs_error_bound;
    Ok(SpecialValue::new(
        front * gg * f.value,
        front.norm() * (gg_err * f.value.norm() + gg.norm() * f.abs_error_bound),
    ))
}

fn check_jk(s: Complex64, mu: f64, nu: Complex64, alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > beta && beta > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "requires alpha > beta > 0, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if mu <= -1.0 {
        return Err(Error::InvalidSpec(format!("requires mu > -1, got {mu}")));
    }
    if s.re + mu <= nu.re.abs() {
        return Err(Error::InvalidSpec(format!(
            "requires Re(s) + mu > |Re(nu)|, got s = {s}, mu = {mu}, nu = {nu}"
        )));
    }
    Ok(())
}

/// Quadrature of the J.K pair against `jk_closed_form`.
pub fn mellin_jk_check(
    s: Complex64,
    mu: f64,
    nu: Complex64,
    alpha: f64,
    beta: f64,
    tol: f64,
) -> Result<EvaluationReport> {
    check_jk(s, mu, nu, alpha, beta)?;
    let rho = s.re + mu - nu.re.abs();
    let lo = -36.0 / rho;
    let hi = (42.0 / alpha).ln().max(1.0);
    let quad = QuadratureControls::default();
    let integrand = |u: f64| -> Result<(Complex64, f64)> {
        let x = u.exp();
        let j = bessel_j(mu, beta * x)?;
        let kv = bessel_k(nu, alpha * x, &quad)?;
        let factor = (s * u).exp();
        Ok((
            factor * j.value * kv.value,
            factor.norm()
                * (j.abs_error_bound * kv.value.norm() + j.value.norm() * kv.abs_error_bound),
        ))
    };
    let (value, quad_err) = refine_trapezoid(&integrand, lo, hi, tol / 8.0, 12)?;
    // model both wings by the evaluated endpoint magnitude over its decay rate
    let (v_lo, _) = integrand(lo)?;
    let (v_hi, _) = integrand(hi)?;
    let left = 4.0 * v_lo.norm() / rho;
    let right = 4.0 * v_hi.norm() / alpha.mul_add(hi.exp(), -s.re.max(0.0)).max(1.0);
    let lhs = ValueWithBound {
        value,
        tail_bound: quad_err + left + right,
        terms_used: 0,
    };
    let closed = jk_closed_form(s, mu, nu, alpha, beta)?;
    let rhs = ValueWithBound {
        value: closed.value,
        tail_bound: closed.abs_error_bound,
        terms_used: 1,
    };
    Ok(make_report(lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_real_parameters() {
        let rep = mellin_forward_check(c_re(2.0), 2.0, 1.0, 2, 1e-10).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!(rep.abs_residual <= 1e-10, "{}", rep.abs_residual);
    }

    #[test]
    fn forward_small_beta_two_term() {
        // 2F1 = 1 + ab/c z + O(z^2): at beta = 1e-4 the closed form must
        // agree with the two-term truncation to ~z^2 ~ 1e-17 relative
        let (s, alpha, beta, k) = (c_re(2.0), 2.0, 1e-4, 2u32);
        let nu = 0.0;
        let closed = forward_closed_form(s, alpha, beta, k).unwrap();
        let z = -(beta * beta) / (alpha * alpha);
        let a = (s + nu) / 2.0;
        let b = (s + nu + 1.0) / 2.0;
        let two_term = (beta / (2.0 * alpha)).powf(nu) * c_re(alpha).powc(-s)
            * gamma_raw(s + nu)
            / gamma_raw(c_re(nu + 1.0))
            * (1.0 + a * b / c_re(nu + 1.0) * z);
        assert!(
            (closed.value - two_term).norm() < 1e-14 * two_term.norm(),
            "{} vs {}",
            closed.value,
            two_term
        );
        let rep = mellin_forward_check(s, alpha, beta, k, 1e-9).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn forward_complex_s() {
        let rep =
            mellin_forward_check(Complex64::new(0.8, 0.5), 3.0, 1.0, 1, 1e-9).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!(rep.abs_residual <= 1e-9, "{}", rep.abs_residual);
    }

    #[test]
    fn forward_domain_guards() {
        assert!(mellin_forward_check(c_re(2.0), 1.0, 2.0, 2, 1e-8).is_err());
        assert!(mellin_forward_check(c_re(0.2), 2.0, 1.0, 1, 1e-8).is_err());
    }

    #[test]
    fn jk_elementary_oracle() {
        // mu = nu = 1/2, s = 2: integrand is sin(beta x) e^{-alpha x} / sqrt(alpha beta),
        // so the integral is beta / (sqrt(alpha beta) (alpha^2 + beta^2))
        let (alpha, beta) = (2.0, 1.0);
        let closed = jk_closed_form(c_re(2.0), 0.5, c_re(0.5), alpha, beta).unwrap();
        let oracle = beta / ((alpha * beta).sqrt() * (alpha * alpha + beta * beta));
        assert!((closed.value.re - oracle).abs() < 1e-13, "{}", closed.value);
        // and the elementary quadrature agrees
        let elem = |u: f64| -> Result<(Complex64, f64)> {
            let x = u.exp();
            let v = x * (beta * x).sin() * (-alpha * x).exp() / (alpha * beta).sqrt();
            Ok((c_re(v), 0.0))
        };
        let (num, _) = refine_trapezoid(&elem, -30.0, 3.2, 1e-12, 12).unwrap();
        assert!((num.re - oracle).abs() < 1e-10, "{}", num.re);
    }

    #[test]
    fn jk_quadrature_matches_closed_form() {
        let rep = mellin_jk_check(c_re(2.0), 0.5, c_re(0.5), 2.0, 1.0, 1e-8).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        let rep = mellin_jk_check(c_re(1.5), 0.0, c_re(0.3), 3.0, 1.0, 1e-9).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!(rep.abs_residual <= 1e-9, "{}", rep.abs_residual);
    }

    #[test]
    fn jk_small_beta_leading_power() {
        // leading behavior proportional to beta^mu
        let mu = 0.7;
        let v1 = jk_closed_form(c_re(1.5), mu, c_re(0.2), 2.0, 1e-5).unwrap();
        let v2 = jk_closed_form(c_re(1.5), mu, c_re(0.2), 2.0, 2e-5).unwrap();
        let ratio = v2.value.norm() / v1.value.norm();
        assert!((ratio - 2f64.powf(mu)).abs() < 1e-6, "{ratio}");
    }

    #[test]
    fn quadrature_doubling_self_consistency() {
        // doubling the refinement depth moves the result by less than the
        // reported error estimate
        // Gamma(3) = int x^2 e^{-x} dx = int e^{3u} e^{-e^u} du
        let f = |u: f64| -> Result<(Complex64, f64)> {
            let x = u.exp();
            Ok((c_re(x * x * x * (-x).exp()), 0.0))
        };
        let (a, err_a) = refine_trapezoid(&f, -40.0, 5.0, 1e-10, 8).unwrap();
        let (b, _) = refine_trapezoid(&f, -40.0, 5.0, 1e-13, 12).unwrap();
        assert!((a - b).norm() <= err_a.max(1e-14));
        assert!((a.re - 2.0).abs() < 1e-9); // Gamma(3)
    }

    #[test]
    fn forward_uses_expected_order() {
        // k = 2 gives order 0: closed form at beta -> 0 tends to Gamma(s) alpha^{-s}
        let closed = forward_closed_form(c_re(2.0), 2.0, 1e-8, 2).unwrap();
        assert!((closed.value.re - 0.25).abs() < 1e-12);
    }
}
