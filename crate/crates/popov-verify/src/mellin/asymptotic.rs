//! Large-height behavior of the transform kernels: the 2F1 factor against
//! its Bessel-I limit, and the Gamma.Gamma.2F1 product against its
//! polynomial-times-exponential majorant.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::specfun::{bessel_i, gamma_raw, hyp2f1, ln_gamma};
use crate::{Error, Result};

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Gamma(a)/Gamma(b) through ln_gamma, shifting both arguments into
/// Re >= 1/2 first; immune to the underflow of |Gamma(x+it)| ~ e^{-pi t/2}.
fn gamma_ratio(a: Complex64, b: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut sa = a;
    let mut pa = one;
    while sa.re < 0.5 {
        pa *= sa;
        sa += 1.0;
    }
    let mut sb = b;
    let mut pb = one;
    while sb.re < 0.5 {
        pb *= sb;
        sb += 1.0;
    }
    (ln_gamma(sa) - ln_gamma(sb)).exp() * pb / pa
}

/// Sampled large-t comparison. For the ratio checks `deviations` holds
/// |ratio - 1| * t (bounded iff the remainder is O(1/t)); for the majorant
/// scan it holds |lhs/bound| (at most 1 from `tau0` on).
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticCheckResult {
    pub heights: Vec<f64>,
    pub ratios: Vec<Complex64>,
    pub deviations: Vec<f64>,
    /// Threshold found by the majorant scan; None for the ratio checks.
    pub tau0: Option<f64>,
}

/// Large-height behavior of
/// 2F1((s+nu)/2, (s+nu+1)/2; nu+1; -beta^2/alpha^2) at s = sigma + it.
///
/// `ratios` compares against the Bessel-I shape
/// Gamma(nu+1) (beta t / 2 alpha)^{-nu} I_nu(beta t / alpha): the right
/// power of t and a safe over-estimate of the growth. The true exponential
/// rate, however, is arctan(beta/alpha), not beta/alpha: a steepest-descent
/// pass over the Mellin pair e^{-alpha x} J_nu(beta x) gives the limit
///
///   L(t) = Gamma(nu+1) (2 alpha / beta)^nu (2 pi beta)^{-1/2}
///          e^{i (nu pi/2 + pi/4)} (alpha + i beta)^{1/2 - s} alpha^s
///          Gamma(s - 1/2) / Gamma(s + nu),
///
/// whose modulus is c (arctan rate) e^{t arctan(beta/alpha)} t^{-nu-1/2}.
/// `deviations` holds |2F1/L - 1| * t, which stays bounded as t grows.
pub fn asymptotic_check_2f1(
    sigma: f64,
    nu_order: f64,
    alpha: f64,
    beta: f64,
    heights: &[f64],
) -> Result<AsymptoticCheckResult> {
    if nu_order <= -1.0 {
        return Err(Error::InvalidSpec(format!(
            "requires nu > -1, got {nu_order}"
        )));
    }
    if sigma <= -nu_order {
        return Err(Error::InvalidSpec(format!(
            "requires sigma > -nu, got sigma = {sigma}, nu = {nu_order}"
        )));
    }
    if !(alpha > beta && beta > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "requires alpha > beta > 0, got alpha = {alpha}, beta = {beta}"
        )));
    }
    if heights.windows(2).any(|w| w[1] <= w[0]) || heights.is_empty() {
        return Err(Error::InvalidSpec(
            "heights must be nonempty and strictly increasing".into(),
        ));
    }
    let nu = nu_order;
    let z = -(beta * beta) / (alpha * alpha);
    let g_nu1 = gamma_raw(c_re(nu + 1.0)).re;
    let front = g_nu1
        * (2.0 * alpha / beta).powf(nu)
        * (2.0 * PI * beta).powf(-0.5)
        * Complex64::new(0.0, nu * PI / 2.0 + PI / 4.0).exp();
    let ab = Complex64::new(alpha, beta);
    let mut ratios = Vec::with_capacity(heights.len());
    let mut deviations = Vec::with_capacity(heights.len());
    for &t in heights {
        let s = Complex64::new(sigma, t);
        let lhs = hyp2f1((s + nu) / 2.0, (s + nu + 1.0) / 2.0, c_re(nu + 1.0), z)?;
        let arg = beta * t / alpha;
        let i = bessel_i(nu, arg)?;
        let shape = g_nu1 * (arg / 2.0).powf(-nu) * i.value;
        ratios.push(lhs.value / shape);
        let limit = front
            * ab.powc(0.5 - s)
            * c_re(alpha).powc(s)
            * gamma_ratio(s - 0.5, s + nu);
        deviations.push((lhs.value / limit - 1.0).norm() * t);
    }
    Ok(AsymptoticCheckResult {
        heights: heights.to_vec(),
        ratios,
        deviations,
        tau0: None,
    })
}

/// Scans for the smallest sampled tau0 from which
/// |Gamma((s+mu+nu)/2) Gamma((s+mu-nu)/2) 2F1(..; mu+1; -(beta/alpha)^2)|
/// <= 4 pi (t/2)^{sigma+mu-1} e^{-(pi/2 - beta/alpha) t} holds at every
/// sampled t >= tau0.
pub fn asymptotic_check_gamma2f1(
    sigma: f64,
    mu: f64,
    nu: Complex64,
    beta_over_alpha: f64,
    tau0_search_max: f64,
) -> Result<AsymptoticCheckResult> {
    if mu <= -1.0 {
        return Err(Error::InvalidSpec(format!("requires mu > -1, got {mu}")));
    }
    if sigma + mu <= nu.re.abs() {
        return Err(Error::InvalidSpec(format!(
            "requires sigma + mu > |Re(nu)|, got sigma = {sigma}, mu = {mu}, nu = {nu}"
        )));
    }
    if !(0.0 < beta_over_alpha && beta_over_alpha < 1.0) {
        return Err(Error::InvalidSpec(format!(
            "requires 0 < beta/alpha < 1, got {beta_over_alpha}"
        )));
    }
    if tau0_search_max <= 1.0 {
        return Err(Error::InvalidSpec(format!(
            "requires a search range above 1, got {tau0_search_max}"
        )));
    }
    let rate = PI / 2.0 - beta_over_alpha;
    let z = -beta_over_alpha * beta_over_alpha;
    // sample past the search window so the threshold certifies a stretch of
    // the asymptotic regime, not just the scan grid
    let t_hi = tau0_search_max + 60.0;
    let mut heights = Vec::new();
    let mut ratios = Vec::new();
    let mut deviations = Vec::new();
    let mut t = 1.0;
    while t <= t_hi {
        let s = Complex64::new(sigma, t);
        let a = (s + mu + nu) / 2.0;
        let b = (s + mu - nu) / 2.0;
        let lhs = (gamma_raw(a) * gamma_raw(b)).norm()
            * hyp2f1(a, b, c_re(mu + 1.0), z)?.value.norm();
        let bound = 4.0 * PI * (t / 2.0).powf(sigma + mu - 1.0) * (-rate * t).exp();
        heights.push(t);
        ratios.push(c_re(lhs / bound));
        deviations.push(lhs / bound);
        t += 1.0;
    }
    // smallest sampled point from which every later sample obeys the bound
    let mut tau0 = None;
    for (i, &t) in heights.iter().enumerate() {
        if t > tau0_search_max {
            break;
        }
        if deviations[i..].iter().all(|&d| d <= 1.0) {
            tau0 = Some(t);
            break;
        }
    }
    let tau0 = tau0.ok_or(Error::FailedToFindTau0 {
        search_max: tau0_search_max,
    })?;
    Ok(AsymptoticCheckResult {
        heights,
        ratios,
        deviations,
        tau0: Some(tau0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_deviation_scales_like_one_over_t() {
        let r = asymptotic_check_2f1(1.0, 0.0, 1.0, 0.3, &[50.0, 100.0, 200.0]).unwrap();
        // |ratio - 1| decreasing, |ratio - 1| * t within a factor-4 band
        assert!(r.deviations.iter().all(|d| d.is_finite()));
        let abs: Vec<f64> = r
            .ratios
            .iter()
            .map(|q| (q - 1.0).norm())
            .collect();
        assert!(abs[0] > abs[1] && abs[1] > abs[2], "{abs:?}");
        let lo = r.deviations.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = r.deviations.iter().cloned().fold(0.0f64, f64::max);
        assert!(hi <= 4.0 * lo, "band [{lo}, {hi}]");
    }

    #[test]
    fn ratio_check_second_configuration() {
        let r = asymptotic_check_2f1(0.5, 0.75, 2.0, 1.0, &[50.0, 100.0, 200.0]).unwrap();
        let lo = r.deviations.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = r.deviations.iter().cloned().fold(0.0f64, f64::max);
        assert!(hi <= 4.0 * lo, "band [{lo}, {hi}]");
    }

    #[test]
    fn degenerate_beta_is_exact() {
        // beta -> 0: 2F1 at z ~ 0 and the I_nu normalization both collapse to 1
        let r = asymptotic_check_2f1(1.0, 0.0, 1.0, 1e-9, &[50.0, 100.0]).unwrap();
        for q in &r.ratios {
            assert!((q - 1.0).norm() < 1e-8, "{q}");
        }
    }

    #[test]
    fn heights_must_increase() {
        assert!(asymptotic_check_2f1(1.0, 0.0, 1.0, 0.3, &[100.0, 50.0]).is_err());
        assert!(asymptotic_check_2f1(1.0, 0.0, 1.0, 0.3, &[]).is_err());
    }

    #[test]
    fn majorant_scan_finds_small_threshold() {
        let r = asymptotic_check_gamma2f1(1.5, 0.0, c_re(0.5), 0.4, 30.0).unwrap();
        assert!(r.tau0.unwrap() <= 30.0, "tau0 {:?}", r.tau0);
    }

    #[test]
    fn majorant_scan_complex_order() {
        let r =
            asymptotic_check_gamma2f1(1.5, 0.0, Complex64::new(0.3, 0.2), 0.4, 30.0).unwrap();
        assert!(r.tau0.unwrap() <= 30.0);
    }

    #[test]
    fn majorant_scan_small_ratio() {
        // beta/alpha -> 0: both sides decay like e^{-pi t/2}; the polynomial
        // slack makes the bound hold from a small threshold
        let r = asymptotic_check_gamma2f1(1.5, 0.0, c_re(0.5), 0.01, 30.0).unwrap();
        assert!(r.tau0.unwrap() <= 10.0, "tau0 {:?}", r.tau0);
    }

    #[test]
    fn majorant_domain_guards() {
        assert!(asymptotic_check_gamma2f1(0.1, 0.0, c_re(0.5), 0.4, 30.0).is_err());
        assert!(asymptotic_check_gamma2f1(1.5, 0.0, c_re(0.5), 1.4, 30.0).is_err());
    }
}
