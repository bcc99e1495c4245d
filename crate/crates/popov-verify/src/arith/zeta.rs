//! Riemann zeta with analytic continuation, the r_k Dirichlet series
//! zeta_k(s), and its completion eta_k(s) = pi^{-s} Gamma(s) zeta_k(s).

use num_complex::Complex64;

use super::sequences::ArithmeticSequence;
use crate::kahan::KahanComplexSum;
use crate::specfun::{gamma, SpecialValue};
use crate::{Error, Result};

const PI: f64 = std::f64::consts::PI;

/// Dirichlet-series selector used by `zeta_like`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ZetaLikeSeries {
    RiemannZeta,
    /// zeta_k(s) = sum_{n >= 1} r_k(n) n^{-s}
    ZetaK(u32),
    /// eta_k(s) = pi^{-s} Gamma(s) zeta_k(s), self-dual under s -> k/2 - s
    CompletedEtaK(u32),
}

impl ZetaLikeSeries {
    /// Abscissa of absolute convergence of the defining series.
    pub fn abscissa(self) -> f64 {
        match self {
            ZetaLikeSeries::RiemannZeta => 1.0,
            ZetaLikeSeries::ZetaK(k) | ZetaLikeSeries::CompletedEtaK(k) => k as f64 / 2.0,
        }
    }
}

/// Evaluate the selected series at s, with continuation where supported.
pub fn zeta_like(series: ZetaLikeSeries, s: Complex64) -> Result<SpecialValue> {
    match series {
        ZetaLikeSeries::RiemannZeta => riemann_zeta(s),
        ZetaLikeSeries::ZetaK(k) => zeta_k(k, s),
        ZetaLikeSeries::CompletedEtaK(k) => eta_k(k, s),
    }
}

/// Riemann zeta for any s != 1: alternating-series acceleration
/// (Cohen–Villegas–Zagier) for Re(s) >= 1/2, the functional equation below.
pub fn riemann_zeta(s: Complex64) -> Result<SpecialValue> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::PoleAt(s));
    }
    if s.re >= 0.5 {
        return cvz_zeta(s);
    }
    if s == Complex64::new(0.0, 0.0) {
        // the reflection below degenerates to 0 * infinity here
        return Ok(SpecialValue::exact(Complex64::new(-0.5, 0.0)));
    }
    // zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)
    let zr = cvz_zeta(Complex64::new(1.0, 0.0) - s)?;
    let g = gamma(Complex64::new(1.0, 0.0) - s)?;
    let chi = Complex64::new(2.0, 0.0).powc(s)
        * Complex64::new(PI, 0.0).powc(s - 1.0)
        * (0.5 * PI * s).sin();
    let value = chi * g.value * zr.value;
    let bound = chi.norm()
        * (g.value.norm() * zr.abs_error_bound
            + zr.value.norm() * g.abs_error_bound
            + g.abs_error_bound * zr.abs_error_bound)
        + 4.0 * f64::EPSILON * value.norm();
    Ok(SpecialValue::new(value, bound))
}

/// Accelerated eta series; valid bound model for Re(s) >= 1/2.
fn cvz_zeta(s: Complex64) -> Result<SpecialValue> {
    let t_abs = s.im.abs();
    let ln_rho = (3.0 + 8f64.sqrt()).ln();
    // terms needed for ~17 digits, inflated by the e^{pi |t| / 2} loss
    let n_terms = ((17.0 * 10f64.ln() + 0.5 * PI * t_abs + (2.0 * t_abs).ln_1p()) / ln_rho
        + 8.0)
        .ceil() as usize;
    if n_terms > 380 {
        return Err(Error::DomainNotCovered(format!(
            "riemann_zeta: |Im s| = {t_abs} too large for the acceleration budget"
        )));
    }
    let n = n_terms.max(24);
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0f64;
    let mut c = -d;
    let mut sum = KahanComplexSum::new();
    for k in 0..n {
        c = b - c;
        let kf = k as f64;
        sum.add(c * Complex64::new(kf + 1.0, 0.0).powc(-s));
        b *= (kf + n as f64) * (kf - n as f64) / ((kf + 0.5) * (kf + 1.0));
    }
    let denom = Complex64::new(1.0, 0.0) - Complex64::new(2.0, 0.0).powc(1.0 - s);
    if denom.norm() < 1e-12 {
        return Err(Error::DomainNotCovered(format!(
            "riemann_zeta: eta-to-zeta factor vanishes at s = {s}"
        )));
    }
    let value = sum.value() / (d * denom);
    // CVZ remainder model with generous safety margin
    let err = 8.0 * (1.0 + 2.0 * t_abs) * (0.5 * PI * t_abs - (n as f64) * ln_rho).exp()
        / denom.norm()
        + 8.0 * f64::EPSILON * value.norm() * (n as f64).sqrt();
    Ok(SpecialValue::new(value, err))
}

/// Largest index the direct zeta_k sum will use.
const ZETA_K_MAX_N: usize = 1 << 17;

/// zeta_k(s) by direct summation, Re(s) > k/2 for k >= 2; k = 1 is exact
/// everywhere via zeta_1(s) = 2 zeta(2s).
pub fn zeta_k(k: u32, s: Complex64) -> Result<SpecialValue> {
    let seq = ArithmeticSequence::sum_of_squares(k);
    zeta_k_with(&seq, k, s)
}

/// Same as [`zeta_k`] with a caller-held coefficient cache.
pub fn zeta_k_with(seq: &ArithmeticSequence, k: u32, s: Complex64) -> Result<SpecialValue> {
    if k == 1 {
        let z = riemann_zeta(2.0 * s)?;
        return Ok(SpecialValue::new(2.0 * z.value, 2.0 * z.abs_error_bound));
    }
    let sigma = s.re;
    let half_k = k as f64 / 2.0;
    if sigma <= half_k {
        return Err(Error::DomainNotCovered(format!(
            "zeta_k: Re(s) = {sigma} <= k/2 = {half_k}; direct series diverges"
        )));
    }
    // Abel summation with R(M) <= 3^k M^{k/2} gives
    //   tail(N) <= 3^k * sigma / (sigma - k/2) * N^{k/2 - sigma}.
    let c = 3f64.powi(k as i32) * sigma / (sigma - half_k);
    let tail = |n: f64| c * n.powf(half_k - sigma);
    let wanted = (c / 1e-14).powf(1.0 / (sigma - half_k));
    let n_max = (wanted.min(ZETA_K_MAX_N as f64).max(64.0)).ceil() as usize;
    let mut sum = KahanComplexSum::new();
    let mut max_term: f64 = 0.0;
    for n in 1..=n_max {
        let a = seq.value(n)?;
        if a.norm() == 0.0 {
            continue;
        }
        let term = a * Complex64::new(n as f64, 0.0).powc(-s);
        max_term = max_term.max(term.norm());
        sum.add(term);
    }
    let value = sum.value();
    let bound = tail(n_max as f64) + 4.0 * f64::EPSILON * max_term * (n_max as f64).sqrt();
    Ok(SpecialValue::new(value, bound))
}

/// eta_k(s) = pi^{-s} Gamma(s) zeta_k(s), evaluated from whichever side of
/// the functional equation eta_k(s) = eta_k(k/2 - s) converges.
pub fn eta_k(k: u32, s: Complex64) -> Result<SpecialValue> {
    let seq = ArithmeticSequence::sum_of_squares(k);
    eta_k_with(&seq, k, s)
}

pub fn eta_k_with(seq: &ArithmeticSequence, k: u32, s: Complex64) -> Result<SpecialValue> {
    let half_k = k as f64 / 2.0;
    if k == 1 || s.re > half_k {
        return eta_k_direct(seq, k, s);
    }
    let reflected = Complex64::new(half_k, 0.0) - s;
    if reflected.re > half_k {
        return eta_k_direct(seq, k, reflected);
    }
    Err(Error::DomainNotCovered(format!(
        "eta_k: s = {s} inside the critical strip for k = {k}"
    )))
}

fn eta_k_direct(seq: &ArithmeticSequence, k: u32, s: Complex64) -> Result<SpecialValue> {
    let z = zeta_k_with(seq, k, s)?;
    let g = gamma(s)?;
    let p = Complex64::new(PI, 0.0).powc(-s);
    let value = p * g.value * z.value;
    let bound = p.norm()
        * (g.value.norm() * z.abs_error_bound
            + z.value.norm() * g.abs_error_bound
            + g.abs_error_bound * z.abs_error_bound)
        + 4.0 * f64::EPSILON * value.norm();
    Ok(SpecialValue::new(value, bound))
}
