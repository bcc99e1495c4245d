//! Guinand-type identities: the double J.K / I.K series against the eta_k
//! boundary combination, the Psi_k rearrangement, and the k = 1 divisor-sum
//! cosine/K chain down to the classical two-series formula.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{make_report, EvaluationReport, Variant};
use crate::arith::{eta_k, riemann_zeta, sigma_complex, ArithmeticSequence};
use crate::kahan::KahanComplexSum;
use crate::series::tails::bessel_k_envelope_const;
use crate::series::{DoubleSeriesSpec, InnerOscillator, ValueWithBound, DEFAULT_MAX_PRODUCT};
use crate::specfun::{bessel_k, gamma, gamma_raw, QuadratureControls};
use crate::{Error, Result};

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn double_spec(
    k: u32,
    nu: Complex64,
    x: f64,
    y: f64,
    variant: Variant,
) -> Result<DoubleSeriesSpec> {
    let kf = k as f64;
    DoubleSeriesSpec::new(
        ArithmeticSequence::sum_of_squares(k),
        ArithmeticSequence::sum_of_squares(k),
        nu / 2.0,
        c_re(0.5 - kf / 4.0),
        match variant {
            Variant::J => InnerOscillator::J,
            Variant::I => InnerOscillator::I,
        },
        kf / 2.0 - 1.0,
        2.0 * PI * y,
        nu,
        2.0 * PI * x,
    )
}

fn check_guinand_domain(k: u32, nu: Complex64, x: f64, y: f64, variant: Variant) -> Result<()> {
    let kf = k as f64;
    match variant {
        Variant::J => {
            if !(x > 0.0 && y > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "requires x, y > 0, got x = {x}, y = {y}"
                )));
            }
        }
        Variant::I => {
            if !(x > y && y > 0.0) {
                return Err(Error::InvalidSpec(format!(
                    "requires x > y > 0, got x = {x}, y = {y}"
                )));
            }
        }
    }
    // eta_k(nu) and eta_k(-nu) = eta_k(k/2 + nu) must avoid the critical
    // strip of zeta_k for k >= 2, and nu = k/2 is excluded throughout
    if nu.re <= kf / 2.0 {
        return Err(Error::DomainNotCovered(format!(
            "requires Re(nu) > k/2 = {}, got {nu}",
            kf / 2.0
        )));
    }
    Ok(())
}

/// eta_k boundary combination
/// x^{-nu} eta_k(nu) {d^{nu-k/2} - 1} + x^{nu} eta_k(-nu) {d^{-nu-k/2} - 1}.
fn eta_boundary(k: u32, nu: Complex64, x: f64, d: f64) -> Result<ValueWithBound> {
    let kf = k as f64;
    let xp = c_re(x);
    let dp = c_re(d);
    let e_plus = eta_k(k, nu)?;
    let e_minus = eta_k(k, -nu)?;
    let b_plus = dp.powc(nu - kf / 2.0) - 1.0;
    let b_minus = dp.powc(-nu - kf / 2.0) - 1.0;
    let t1 = xp.powc(-nu) * e_plus.value * b_plus;
    let t2 = xp.powc(nu) * e_minus.value * b_minus;
    Ok(ValueWithBound {
        value: t1 + t2,
        tail_bound: xp.powc(-nu).norm() * e_plus.abs_error_bound * b_plus.norm()
            + xp.powc(nu).norm() * e_minus.abs_error_bound * b_minus.norm(),
        terms_used: 1,
    })
}

/// Double-series difference (the displayed left side) vs the eta_k boundary
/// combination (the right side).
pub fn verify_guinand(
    k: u32,
    nu: Complex64,
    x: f64,
    y: f64,
    variant: Variant,
    tol: f64,
) -> Result<EvaluationReport> {
    check_guinand_domain(k, nu, x, y, variant)?;
    let kf = k as f64;
    let d = match variant {
        Variant::J => x * x + y * y,
        Variant::I => x * x - y * y,
    };
    let pref = 2.0 * gamma_raw(c_re(kf / 2.0)).re * (PI * y).powf(1.0 - kf / 2.0);
    let stol = 0.25 * tol / pref.abs().max(1.0);
    let direct = double_spec(k, nu, x, y, variant)?.eval(stol, DEFAULT_MAX_PRODUCT)?;
    let mapped =
        double_spec(k, nu, x / d, y / d, variant)?.eval(stol * d, DEFAULT_MAX_PRODUCT)?;
    let lhs = ValueWithBound {
        value: pref * (direct.value - mapped.value / d),
        tail_bound: pref.abs() * (direct.tail_bound + mapped.tail_bound / d),
        terms_used: direct.terms_used + mapped.terms_used,
    };
    let rhs = eta_boundary(k, nu, x, d)?;
    Ok(make_report(lhs, rhs, tol))
}

/// Psi_k(nu; x, y) = x^{-nu} eta_k(nu) + x^{nu} eta_k(-nu) + pref * double series;
/// the identity is Psi_k(x,y) = d^{-k/2} Psi_k(mapped), d = x^2 + y^2.
pub fn verify_psi_involution(
    k: u32,
    nu: Complex64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<EvaluationReport> {
    check_guinand_domain(k, nu, x, y, Variant::J)?;
    let kf = k as f64;
    let d = x * x + y * y;
    let e_plus = eta_k(k, nu)?;
    let e_minus = eta_k(k, -nu)?;
    let psi = |xx: f64, yy: f64, budget: f64| -> Result<ValueWithBound> {
        let pref = 2.0 * gamma_raw(c_re(kf / 2.0)).re * (PI * yy).powf(1.0 - kf / 2.0);
        let s = double_spec(k, nu, xx, yy, Variant::J)?
            .eval(0.25 * budget / pref.abs().max(1.0), DEFAULT_MAX_PRODUCT)?;
        let xp = c_re(xx);
        Ok(ValueWithBound {
            value: xp.powc(-nu) * e_plus.value + xp.powc(nu) * e_minus.value
                + pref * s.value,
            tail_bound: xp.powc(-nu).norm() * e_plus.abs_error_bound
                + xp.powc(nu).norm() * e_minus.abs_error_bound
                + pref.abs() * s.tail_bound,
            terms_used: s.terms_used,
        })
    };
    let lhs = psi(x, y, tol)?;
    let scale = d.powf(-kf / 2.0);
    let (xm, ym) = (x / d, y / d);
    let m = psi(xm, ym, tol / scale.max(1.0))?;
    let rhs = ValueWithBound {
        value: scale * m.value,
        tail_bound: scale * m.tail_bound,
        terms_used: m.terms_used,
    };
    Ok(make_report(lhs, rhs, tol))
}

/// sum_n sigma_{-nu}(n) n^{nu/2} cos(2 pi n y) K_{nu/2}(2 pi n x), certified
/// through the K envelope (the cos.K product needs its own loop).
fn sigma_cos_k_sum(nu: Complex64, x: f64, y: f64, tol: f64) -> Result<ValueWithBound> {
    debug_assert!(x > 0.0);
    let quad = QuadratureControls::default();
    // |sigma_{-nu}(n) n^{nu/2}| <= n^{1 + max(-Re nu, 0) + Re(nu)/2 + |Im nu|...}
    // using |d^{-nu}| = d^{-Re nu} <= n^{max(-Re nu, 0)} per divisor
    let g = 1.0 + (-nu.re).max(0.0) + nu.re / 2.0;
    let c_k = bessel_k_envelope_const(nu.re / 2.0);
    let rate = 2.0 * PI * x;
    let bound = |n: usize| -> f64 {
        let nf = n as f64;
        c_k * nf.powf(g) * (-rate * nf).exp()
    };
    let mut cutoff = None;
    let mut last_tail = f64::INFINITY;
    for n in 1..=100_000usize {
        if rate * (n as f64 + 1.0) < 1.0 {
            continue; // K envelope needs argument >= 1
        }
        let rho = (1.0 + 1.0 / (n as f64 + 1.0)).powf(g.max(0.0)) * (-rate).exp();
        if rho >= 1.0 {
            continue;
        }
        let tail = bound(n + 1) / (1.0 - rho);
        last_tail = tail;
        if tail <= tol {
            cutoff = Some((n, tail));
            break;
        }
    }
    let (n_cut, tail) = cutoff.ok_or(Error::TolUnreachable {
        tol,
        ceiling: 100_000,
        tail: last_tail,
    })?;
    let mut sum = KahanComplexSum::new();
    let mut err = 0.0;
    for n in 1..=n_cut {
        let nf = n as f64;
        let coeff = sigma_complex(-nu, n as u64) * c_re(nf).powc(nu / 2.0);
        let kv = bessel_k(nu / 2.0, rate * nf, &quad)?;
        let term = coeff * (2.0 * PI * nf * y).cos() * kv.value;
        sum.add(term);
        err += coeff.norm() * kv.abs_error_bound;
    }
    Ok(ValueWithBound {
        value: sum.value(),
        tail_bound: tail + err,
        terms_used: n_cut,
    })
}

/// The k = 1 chain: divisor-weighted cos.K series minus its mapped copy vs
/// the Gamma-zeta bracket combination, valid for any complex nu away from
/// the Gamma/zeta singularities (nu = 0 and even integers excluded).
pub fn verify_guinand_k1_chain(
    nu: Complex64,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<EvaluationReport> {
    if x <= 0.0 || y < 0.0 {
        return Err(Error::InvalidSpec(format!(
            "requires x > 0 and y >= 0, got x = {x}, y = {y}"
        )));
    }
    if nu.im == 0.0 {
        let half = nu.re / 2.0;
        if nu.re == 0.0 || (half == half.round() && half != 0.5 && nu.re.abs() >= 2.0 - 1e-12) {
            if nu.re == 0.0 || (nu.re / 2.0).round() * 2.0 == nu.re {
                return Err(Error::PoleAt(nu));
            }
        }
        if nu.re == 1.0 {
            // zeta(nu) pole
            return Err(Error::PoleAt(nu));
        }
    }
    let d = x * x + y * y;
    let s_direct = sigma_cos_k_sum(nu, x, y, 0.25 * tol)?;
    let pre = d.powf(-0.5);
    let s_mapped = sigma_cos_k_sum(nu, x / d, y / d, 0.25 * tol / pre.max(1.0))?;
    let lhs = ValueWithBound {
        value: s_direct.value - pre * s_mapped.value,
        tail_bound: s_direct.tail_bound + pre * s_mapped.tail_bound,
        terms_used: s_direct.terms_used + s_mapped.terms_used,
    };

    let px = c_re(PI * x);
    let g_plus = gamma(nu / 2.0)?;
    let g_minus = gamma(-nu / 2.0)?;
    let z_plus = riemann_zeta(nu)?;
    let z_minus = riemann_zeta(-nu)?;
    let b_plus = c_re(d).powc((nu - 1.0) / 2.0) - 1.0;
    let b_minus = c_re(d).powc(-(nu + 1.0) / 2.0) - 1.0;
    let t1 = 0.25 * px.powc(-nu / 2.0) * g_plus.value * z_plus.value * b_plus;
    let t2 = 0.25 * px.powc(nu / 2.0) * g_minus.value * z_minus.value * b_minus;
    let e1 = 0.25
        * px.powc(-nu / 2.0).norm()
        * b_plus.norm()
        * (g_plus.abs_error_bound * z_plus.value.norm()
            + g_plus.value.norm() * z_plus.abs_error_bound);
    let e2 = 0.25
        * px.powc(nu / 2.0).norm()
        * b_minus.norm()
        * (g_minus.abs_error_bound * z_minus.value.norm()
            + g_minus.value.norm() * z_minus.abs_error_bound);
    let rhs = ValueWithBound {
        value: t1 + t2,
        tail_bound: e1 + e2,
        terms_used: 1,
    };
    Ok(make_report(lhs, rhs, tol))
}
