//! The theta-family identities: the k-squares theta relation, the J/I
//! transformation with Gaussian weight in z, its k = 1 cos/cosh shape, and
//! the Humbert-function generalization.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{affine, make_report, side_tol, EvaluationReport};
use crate::arith::ArithmeticSequence;
use crate::kahan::KahanComplexSum;
use crate::series::{
    max_terms_limit, ArgMap, BesselSeriesSpec, IndexMap, Oscillator, ValueWithBound,
};
use crate::specfun::{gamma_raw, humbert_phi3, hyp1f1};
use crate::{Error, Result};

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// sum_{n>=1} r_k(n) e^{-pi n x}, certified.
pub(crate) fn theta_sum(k: u32, x: f64, tol: f64) -> Result<ValueWithBound> {
    let spec = BesselSeriesSpec::new(
        ArithmeticSequence::sum_of_squares(k),
        Complex64::new(0.0, 0.0),
        PI * x,
        Oscillator::Exp,
        0.0,
        IndexMap::Identity,
        ArgMap::Linear,
    )?;
    spec.eval(tol, max_terms_limit())
}

/// 1 + sum r_k(n) e^{-pi n x}  =  x^{-k/2} (1 + sum r_k(n) e^{-pi n / x}).
pub fn verify_theta_k(k: u32, x: f64, tol: f64) -> Result<EvaluationReport> {
    if x <= 0.0 {
        return Err(Error::InvalidSpec(format!("theta_k requires x > 0, got {x}")));
    }
    let scale = x.powf(-(k as f64) / 2.0);
    let lhs = affine(c_re(1.0), c_re(1.0), theta_sum(k, x, side_tol(tol, 1.0))?);
    let rhs = affine(
        c_re(scale),
        c_re(scale),
        theta_sum(k, 1.0 / x, side_tol(tol, scale))?,
    );
    Ok(make_report(lhs, rhs, tol))
}

/// J/I transformation with Gaussian factor, normalized by the shared constant
/// z^{k/2-1} pi^{k/4-1/2} / (2^{k/2-1} Gamma(k/2)) so z = 0 is regular for
/// every k. The normalized z -> 0 limit is x^{k/4} (1 + theta sum).
pub fn verify_popov(k: u32, x: f64, z: f64, tol: f64) -> Result<EvaluationReport> {
    if x <= 0.0 {
        return Err(Error::InvalidSpec(format!("requires x > 0, got {x}")));
    }
    if z < 0.0 {
        return Err(Error::InvalidSpec(format!("requires z >= 0, got {z}")));
    }
    let kf = k as f64;
    if z == 0.0 {
        let a = x.powf(kf / 4.0);
        let b = x.powf(-kf / 4.0);
        let lhs = affine(c_re(a), c_re(a), theta_sum(k, x, side_tol(tol, a))?);
        let rhs = affine(c_re(b), c_re(b), theta_sum(k, 1.0 / x, side_tol(tol, b))?);
        return Ok(make_report(lhs, rhs, tol));
    }
    let order = kf / 2.0 - 1.0;
    let norm = z.powf(order) * PI.powf(kf / 4.0 - 0.5)
        / (2f64.powf(order) * gamma_raw(c_re(kf / 2.0)).re);
    let gauss = (z * z / 8.0).exp();
    let series = |inv_x: bool, osc: fn(f64) -> Oscillator| -> Result<BesselSeriesSpec> {
        let xx = if inv_x { 1.0 / x } else { x };
        BesselSeriesSpec::new(
            ArithmeticSequence::sum_of_squares(k),
            c_re(0.5 - kf / 4.0),
            PI * xx,
            osc(order),
            (PI * xx).sqrt() * z,
            IndexMap::Identity,
            ArgMap::Sqrt,
        )
    };
    let pre_l = x.sqrt() * gauss / norm;
    let s_j = series(false, Oscillator::J)?.eval(side_tol(tol, pre_l), max_terms_limit())?;
    let lhs = affine(c_re(x.powf(kf / 4.0) * gauss), c_re(pre_l), s_j);
    let pre_r = 1.0 / (x.sqrt() * gauss * norm);
    let s_i = series(true, Oscillator::I)?.eval(side_tol(tol, pre_r), max_terms_limit())?;
    let rhs = affine(c_re(x.powf(-kf / 4.0) / gauss), c_re(pre_r), s_i);
    Ok(make_report(lhs, rhs, tol))
}

/// The k = 1 shape: x^{1/4} e^{z^2/8} {1 + 2 sum e^{-pi n^2 x} cos(sqrt(pi x) n z)}
/// equals the same with x -> 1/x, z^2 -> -z^2, cos -> cosh.
pub fn verify_popov_k1(x: f64, z: f64, tol: f64) -> Result<EvaluationReport> {
    if x <= 0.0 {
        return Err(Error::InvalidSpec(format!("requires x > 0, got {x}")));
    }
    let gauss = (z * z / 8.0).exp();
    let series = |xx: f64, osc: Oscillator, pre: f64| -> Result<ValueWithBound> {
        // r_1 weights over n with argument z sqrt(pi x n): supported on
        // n = m^2, where it is the displayed sum over m with weight 2
        BesselSeriesSpec::new(
            ArithmeticSequence::sum_of_squares(1),
            Complex64::new(0.0, 0.0),
            PI * xx,
            osc,
            (PI * xx).sqrt() * z,
            IndexMap::Identity,
            ArgMap::Sqrt,
        )?
        .eval(side_tol(tol, pre), max_terms_limit())
    };
    let pre_l = x.powf(0.25) * gauss;
    let lhs = affine(
        c_re(pre_l),
        c_re(pre_l),
        series(x, Oscillator::Cos, pre_l)?,
    );
    let pre_r = x.powf(-0.25) / gauss;
    let rhs = affine(
        c_re(pre_r),
        c_re(pre_r),
        series(1.0 / x, Oscillator::Cosh, pre_r)?,
    );
    Ok(make_report(lhs, rhs, tol))
}

/// The Humbert-side series sum_n r_k(n) e^{-pi n / x} Phi3(b; c; z^2/4, pi z^2 n / (4x)),
/// with an a-priori tail from |Phi3| <= e^{Rw} (1 + u/c) e^{2 sqrt(u)} for
/// b >= 0, c > 0 (termwise positive majorant after splitting the double sum).
fn phi3_sum(k: u32, b: f64, c: f64, x: f64, z: f64, tol: f64) -> Result<ValueWithBound> {
    debug_assert!(b >= 0.0 && c > 0.0);
    let weights = ArithmeticSequence::sum_of_squares(k);
    let (cw, gw) = weights.growth_bound();
    let alpha = PI / x;
    let w = z * z / 4.0;
    let u_rate = PI * z * z / (4.0 * x); // u_n = u_rate * n, 2 sqrt(u_n) = z sqrt(pi n / x)
    let beta = z * (PI / x).sqrt();
    let big_r = (b / c).max(1.0);
    let bound = |n: usize| -> f64 {
        let nf = n as f64;
        cw * nf.powf(gw)
            * (-alpha * nf).exp()
            * (big_r * w).exp()
            * (1.0 + u_rate * nf / c)
            * (beta * nf.sqrt()).exp()
    };
    // sup over the tail of bound(m+1)/bound(m): the linear factors give
    // (1+1/n)^{gw+1}, the exponentials -alpha + beta (sqrt increments
    // nonincreasing)
    let ratio = |n: usize| -> f64 {
        let nf = n as f64;
        (1.0 + 1.0 / nf).powf(gw.max(0.0) + 1.0)
            * (-alpha + beta * ((nf + 1.0).sqrt() - nf.sqrt())).exp()
    };
    let max_terms = max_terms_limit();
    let mut cutoff = None;
    let mut last_tail = f64::INFINITY;
    for n in 1..=max_terms {
        let rho = ratio(n + 1);
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
        ceiling: max_terms,
        tail: last_tail,
    })?;
    let mut sum = KahanComplexSum::new();
    let mut err = 0.0;
    for n in 1..=n_cut {
        let a = weights.value(n)?;
        if a.norm() == 0.0 {
            continue;
        }
        let factor = a * (-alpha * n as f64).exp();
        let phi = humbert_phi3(c_re(b), c_re(c), c_re(w), c_re(u_rate * n as f64))?;
        sum.add(factor * phi.value);
        err += factor.norm() * phi.abs_error_bound;
    }
    Ok(ValueWithBound {
        value: sum.value(),
        tail_bound: tail + err + 4.0 * f64::EPSILON * sum.value().norm() * (n_cut as f64).sqrt(),
        terms_used: n_cut,
    })
}

/// The general-index formula: J_nu series with boundary power vs the
/// 1F1 term plus the Phi3-weighted series. Normalized by the shared factor
/// z^nu pi^{nu/2} / (2^nu Gamma(nu+1)) so z = 0 is regular.
pub fn verify_phi3(k: u32, nu: f64, x: f64, z: f64, tol: f64) -> Result<EvaluationReport> {
    if x <= 0.0 {
        return Err(Error::InvalidSpec(format!("requires x > 0, got {x}")));
    }
    if nu <= -1.0 {
        return Err(Error::InvalidSpec(format!("requires nu > -1, got {nu}")));
    }
    let kf = k as f64;
    let b = 1.0 - kf / 2.0 + nu;
    if b < 0.0 {
        // the Phi3 tail majorant needs b >= 0 (nu >= k/2 - 1)
        return Err(Error::DomainNotCovered(format!(
            "Phi3 tail bound needs nu >= k/2 - 1, got nu = {nu}, k = {k}"
        )));
    }
    if z < 0.0 {
        return Err(Error::InvalidSpec(format!("requires z >= 0, got {z}")));
    }
    let gauss = (z * z / 8.0).exp();
    if z == 0.0 {
        // normalized limit: x^{(nu+1)/2} (1 + theta) = x^{(nu-k+1)/2} (1 + theta(1/x))
        let a = x.powf((nu + 1.0) / 2.0);
        let lhs = affine(c_re(a), c_re(a), theta_sum(k, x, side_tol(tol, a))?);
        let b2 = x.powf((nu - kf + 1.0) / 2.0);
        let rhs = affine(c_re(b2), c_re(b2), theta_sum(k, 1.0 / x, side_tol(tol, b2))?);
        return Ok(make_report(lhs, rhs, tol));
    }
    // norm = z^nu pi^{nu/2} / (2^nu Gamma(nu+1))
    let norm = z.powf(nu) * PI.powf(nu / 2.0)
        / (2f64.powf(nu) * gamma_raw(c_re(nu + 1.0)).re);
    let pre_l = x.sqrt() * gauss / norm;
    let s_j = BesselSeriesSpec::new(
        ArithmeticSequence::sum_of_squares(k),
        c_re(-nu / 2.0),
        PI * x,
        Oscillator::J(nu),
        (PI * x).sqrt() * z,
        IndexMap::Identity,
        ArgMap::Sqrt,
    )?
    .eval(side_tol(tol, pre_l), max_terms_limit())?;
    let lhs = affine(c_re(x.powf((nu + 1.0) / 2.0) * gauss), c_re(pre_l), s_j);

    let front = x.powf((nu - kf + 1.0) / 2.0);
    let f11 = hyp1f1(c_re(kf / 2.0), c_re(nu + 1.0), c_re(-z * z / 4.0))?;
    let pre_phi = front / gauss;
    let s_phi = phi3_sum(k, b, nu + 1.0, x, z, side_tol(tol, pre_phi))?;
    let mut rhs = affine(c_re(front * gauss) * f11.value, c_re(pre_phi), s_phi);
    rhs.tail_bound += front * gauss * f11.abs_error_bound;
    Ok(make_report(lhs, rhs, tol))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_fixed_point_and_transform() {
        for k in [1u32, 2, 4, 6] {
            let rep = verify_theta_k(k, 1.0, 1e-13).unwrap();
            assert!(rep.abs_residual < 1e-14, "k={k} fixed point");
        }
        let rep = verify_theta_k(2, 3.0, 1e-12).unwrap();
        assert!(rep.pass && rep.abs_residual <= 1e-12, "{}", rep.abs_residual);
    }

    #[test]
    fn theta_k1_is_jacobi_relation() {
        // theta(x) = x^{-1/2} theta(1/x) with theta(x) = 1 + 2 sum e^{-pi m^2 x}
        let x = 0.5;
        let t = |xx: f64| {
            let mut s = 1.0;
            for m in 1..30 {
                s += 2.0 * (-PI * (m * m) as f64 * xx).exp();
            }
            s
        };
        let direct_l = t(x);
        let direct_r = x.powf(-0.5) * t(1.0 / x);
        let rep = verify_theta_k(1, x, 1e-12).unwrap();
        assert!((rep.lhs.value.re - direct_l).abs() < 1e-13);
        assert!((rep.rhs.value.re - direct_r).abs() < 1e-13);
        assert!(rep.pass);
    }

    #[test]
    fn popov_passes_and_degenerates() {
        let rep = verify_popov(2, 1.3, 0.7, 1e-12).unwrap();
        assert!(rep.pass && rep.abs_residual <= 1e-10, "{}", rep.abs_residual);
        // z = 0 reduction vs theta_k
        let a = verify_popov(3, 1.4, 0.0, 1e-12).unwrap();
        let b = verify_theta_k(3, 1.4, 1e-12).unwrap();
        assert!((a.abs_residual - b.abs_residual).abs() <= 1e-12);
    }

    #[test]
    fn popov_self_dual_point() {
        let rep = verify_popov(1, 1.0, 0.0, 1e-13).unwrap();
        assert!(rep.abs_residual < 1e-14);
    }

    #[test]
    fn popov_k1_matches_general_popov() {
        let (x, z) = (2.0, 1.0);
        let spec_rep = verify_popov_k1(x, z, 1e-11).unwrap();
        assert!(spec_rep.pass, "residual {}", spec_rep.abs_residual);
        let gen = verify_popov(1, x, z, 1e-11).unwrap();
        assert!(gen.pass);
        // both evaluators report the same normalized sides
        assert!(
            (spec_rep.lhs.value.re - gen.lhs.value.re).abs() < 1e-9,
            "{} vs {}",
            spec_rep.lhs.value.re,
            gen.lhs.value.re
        );
        assert!((spec_rep.rhs.value.re - gen.rhs.value.re).abs() < 1e-9);
    }

    #[test]
    fn phi3_at_popov_index_matches_popov() {
        let (k, x, z) = (2u32, 1.2, 0.4);
        let nu = k as f64 / 2.0 - 1.0;
        let p = verify_phi3(k, nu, x, z, 1e-10).unwrap();
        assert!(p.pass, "residual {}", p.abs_residual);
        let q = verify_popov(k, x, z, 1e-10).unwrap();
        // identical normalization (norm constants coincide at nu = k/2-1)
        assert!((p.lhs.value - q.lhs.value).norm() < 1e-9);
        assert!((p.rhs.value - q.rhs.value).norm() < 1e-9);
    }

    #[test]
    fn phi3_z_zero_reduces_to_theta_type() {
        let rep = verify_phi3(1, 0.25, 1.5, 0.0, 1e-12).unwrap();
        assert!(rep.pass && rep.abs_residual <= 1e-12);
    }

    #[test]
    fn phi3_generic_case() {
        let rep = verify_phi3(1, 0.25, 1.5, 0.5, 1e-9).unwrap();
        assert!(rep.pass, "residual {}", rep.abs_residual);
        assert!(rep.abs_residual <= 1e-8);
    }
}
