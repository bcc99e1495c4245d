//! The (x, y) -> (x, y)/(x^2 +- y^2) transformation family: the main J/I
//! theorem for r_k, its Theta_k form, the k = 4 exponential shape, and the
//! divisor, cusp-form and Dirichlet-character analogues.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{affine, make_report, side_tol, EvaluationReport, Variant};
use crate::arith::{bernoulli_f64, ArithmeticSequence, DirichletCharacter};
use crate::series::{
    max_terms_limit, ArgMap, BesselSeriesSpec, IndexMap, Oscillator, ValueWithBound,
};
use crate::specfun::gamma_raw;
use crate::{Error, Result};

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// (x, y) / (x^2 + s y^2) with s = +1 (J) or -1 (I).
pub fn involution_map(x: f64, y: f64, variant: Variant) -> (f64, f64) {
    let d = match variant {
        Variant::J => x * x + y * y,
        Variant::I => x * x - y * y,
    };
    (x / d, y / d)
}

fn check_domain(x: f64, y: f64) -> Result<()> {
    if !(x > y && y > 0.0) {
        return Err(Error::InvalidSpec(format!(
            "requires x > y > 0, got x = {x}, y = {y}"
        )));
    }
    Ok(())
}

fn osc(variant: Variant, order: f64) -> Oscillator {
    match variant {
        Variant::J => Oscillator::J(order),
        Variant::I => Oscillator::I(order),
    }
}

/// sum_n r_k(n) n^{1/2-k/4} e^{-pi n x} B_{k/4-1/2}(pi n y) with B = J or I.
fn analogue_sum(k: u32, x: f64, y: f64, variant: Variant, tol: f64) -> Result<ValueWithBound> {
    let kf = k as f64;
    BesselSeriesSpec::new(
        ArithmeticSequence::sum_of_squares(k),
        c_re(0.5 - kf / 4.0),
        PI * x,
        osc(variant, kf / 4.0 - 0.5),
        PI * y,
        IndexMap::Identity,
        ArgMap::Linear,
    )?
    .eval(tol, max_terms_limit())
}

/// constant term (pi y)^{k/4-1/2} / (2^{k/4-1/2} Gamma(k/4+1/2)).
fn analogue_const(k: u32, y: f64) -> f64 {
    let e = k as f64 / 4.0 - 0.5;
    (PI * y).powf(e) / (2f64.powf(e) * gamma_raw(c_re(e + 1.0)).re)
}

/// The main transformation: constant + series at (x, y) equals the mapped
/// side scaled by (x^2 +- y^2)^{-k/4} and ^{-1/2} respectively.
pub fn verify_analogue(
    k: u32,
    x: f64,
    y: f64,
    variant: Variant,
    tol: f64,
) -> Result<EvaluationReport> {
    check_domain(x, y)?;
    let kf = k as f64;
    let d = match variant {
        Variant::J => x * x + y * y,
        Variant::I => x * x - y * y,
    };
    let (xm, ym) = involution_map(x, y, variant);
    let lhs = affine(
        c_re(analogue_const(k, y)),
        c_re(1.0),
        analogue_sum(k, x, y, variant, side_tol(tol, 1.0))?,
    );
    let pre = d.powf(-0.5);
    let rhs = affine(
        c_re(analogue_const(k, y) * d.powf(-kf / 4.0)),
        c_re(pre),
        analogue_sum(k, xm, ym, variant, side_tol(tol, pre))?,
    );
    Ok(make_report(lhs, rhs, tol))
}

/// Theta_k(x, y) = const + J-series; the identity is
/// Theta_k(x,y) = (x^2+y^2)^{-1/2} Theta_k(mapped).
pub fn verify_theta_involution(k: u32, x: f64, y: f64, tol: f64) -> Result<EvaluationReport> {
    check_domain(x, y)?;
    let theta = |xx: f64, yy: f64, pre: f64| -> Result<ValueWithBound> {
        Ok(affine(
            c_re(analogue_const(k, yy)),
            c_re(1.0),
            analogue_sum(k, xx, yy, Variant::J, side_tol(tol, pre))?,
        ))
    };
    let lhs = theta(x, y, 1.0)?;
    let (xm, ym) = involution_map(x, y, Variant::J);
    let pre = (x * x + y * y).powf(-0.5);
    let rhs = affine(c_re(0.0), c_re(pre), theta(xm, ym, pre)?);
    Ok(make_report(lhs, rhs, tol))
}

/// 2 pi y + sum (r_4(n)/n)(e^{-pi n (x-y)} - e^{-pi n (x+y)}) and the same
/// with 1/(x+y), 1/(x-y) exponents and constant 2 pi y / (x^2 - y^2).
pub fn verify_k4(x: f64, y: f64, tol: f64) -> Result<EvaluationReport> {
    check_domain(x, y)?;
    let exp_sum = |a: f64| -> Result<ValueWithBound> {
        BesselSeriesSpec::new(
            ArithmeticSequence::sum_of_squares(4),
            c_re(-1.0),
            PI * a,
            Oscillator::Exp,
            0.0,
            IndexMap::Identity,
            ArgMap::Linear,
        )?
        .eval(side_tol(tol, 1.0) / 2.0, max_terms_limit())
    };
    let diff = |a: f64, b: f64| -> Result<ValueWithBound> {
        let p = exp_sum(a)?;
        let q = exp_sum(b)?;
        Ok(ValueWithBound {
            value: p.value - q.value,
            tail_bound: p.tail_bound + q.tail_bound,
            terms_used: p.terms_used.max(q.terms_used),
        })
    };
    let lhs = affine(c_re(2.0 * PI * y), c_re(1.0), diff(x - y, x + y)?);
    let rhs = affine(
        c_re(2.0 * PI * y / (x * x - y * y)),
        c_re(1.0),
        diff(1.0 / (x + y), 1.0 / (x - y))?,
    );
    Ok(make_report(lhs, rhs, tol))
}

/// sigma_k analogue for odd k >= 3, with Bernoulli-number boundary terms and
/// the displayed (-1)^{(k-1)/2}, (-1)^{(k+1)/2} signs on the mapped side.
pub fn verify_divisor(
    k: u32,
    x: f64,
    y: f64,
    variant: Variant,
    tol: f64,
) -> Result<EvaluationReport> {
    if k < 3 || k % 2 == 0 {
        return Err(Error::InvalidSpec(format!(
            "divisor identity needs odd k >= 3, got {k}"
        )));
    }
    check_domain(x, y)?;
    let kf = k as f64;
    let series = |xx: f64, yy: f64, pre: f64| -> Result<ValueWithBound> {
        BesselSeriesSpec::new(
            ArithmeticSequence::divisor(c_re(kf)),
            c_re(-kf / 2.0),
            2.0 * PI * xx,
            osc(variant, kf / 2.0),
            2.0 * PI * yy,
            IndexMap::Identity,
            ArgMap::Linear,
        )?
        .eval(side_tol(tol, pre), max_terms_limit())
    };
    let b_next = bernoulli_f64((k + 1) as usize);
    let const0 = b_next * (PI * y).powf(kf / 2.0)
        / (2.0 * (kf + 1.0) * gamma_raw(c_re(kf / 2.0 + 1.0)).re);
    let d = match variant {
        Variant::J => x * x + y * y,
        Variant::I => x * x - y * y,
    };
    let (xm, ym) = involution_map(x, y, variant);
    let lhs = affine(c_re(-const0), c_re(1.0), series(x, y, 1.0)?);
    let sign_const = if (k - 1) / 2 % 2 == 0 { 1.0 } else { -1.0 };
    let sign_series = -sign_const; // (-1)^{(k+1)/2}
    let pre = sign_series * d.powf(-0.5);
    let rhs = affine(
        c_re(sign_const * const0 * d.powf(-(kf + 1.0) / 2.0)),
        c_re(pre),
        series(xm, ym, pre)?,
    );
    Ok(make_report(lhs, rhs, tol))
}

/// Ramanujan tau analogue (weight 12 cusp form): no boundary terms, sign +1.
pub fn verify_cusp_tau(x: f64, y: f64, variant: Variant, tol: f64) -> Result<EvaluationReport> {
    check_domain(x, y)?;
    let series = |xx: f64, yy: f64, pre: f64| -> Result<ValueWithBound> {
        BesselSeriesSpec::new(
            ArithmeticSequence::ramanujan_tau(),
            c_re(-5.5),
            2.0 * PI * xx,
            osc(variant, 5.5),
            2.0 * PI * yy,
            IndexMap::Identity,
            ArgMap::Linear,
        )?
        .eval(side_tol(tol, pre), max_terms_limit())
    };
    let d = match variant {
        Variant::J => x * x + y * y,
        Variant::I => x * x - y * y,
    };
    let (xm, ym) = involution_map(x, y, variant);
    let lhs = series(x, y, 1.0)?;
    let pre = d.powf(-0.5);
    let rhs = affine(c_re(0.0), c_re(pre), series(xm, ym, pre)?);
    Ok(make_report(lhs, rhs, tol))
}

/// Primitive-character analogue: chi(n) sqrt(n) weights over n^2 with the
/// J_{-1/4} (even chi) or J_{1/4} (odd chi) kernel and a Gauss-sum factor.
pub fn verify_character(
    chi: &DirichletCharacter,
    x: f64,
    y: f64,
    tol: f64,
) -> Result<EvaluationReport> {
    check_domain(x, y)?;
    if chi.is_principal() || !chi.is_primitive() {
        return Err(Error::InvalidSpec(
            "character identity needs a primitive nonprincipal character".into(),
        ));
    }
    let q = chi.modulus() as f64;
    let order = if chi.is_even() { -0.25 } else { 0.25 };
    let series = |c: DirichletCharacter, xx: f64, yy: f64, pre: f64| -> Result<ValueWithBound> {
        BesselSeriesSpec::new(
            ArithmeticSequence::character(c),
            c_re(0.5),
            PI * xx / q,
            Oscillator::J(order),
            PI * yy / q,
            IndexMap::Squares,
            ArgMap::Linear,
        )?
        .eval(side_tol(tol, pre), max_terms_limit())
    };
    let g = chi.gauss_sum()?;
    let d = x * x + y * y;
    let factor = if chi.is_even() {
        g / (q * d).sqrt()
    } else {
        -Complex64::i() * g / (q * d).sqrt()
    };
    let (xm, ym) = involution_map(x, y, Variant::J);
    let lhs = series(chi.clone(), x, y, 1.0)?;
    let rhs = affine(
        c_re(0.0),
        factor,
        series(chi.conjugate(), xm, ym, factor.norm())?,
    );
    Ok(make_report(lhs, rhs, tol))
}
