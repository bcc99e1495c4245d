//! Bessel kernels: J and I by ascending series (with a large-argument branch
//! for real arguments of J), K by quadrature of its real-axis integral
//! representation, which handles complex order uniformly.

use num_complex::Complex64;

use super::gamma::gamma_raw;
use super::{QuadratureControls, SpecialValue};
use crate::kahan::{KahanComplexSum, KahanSum};
use crate::{Error, Result};

const EPS: f64 = 2.2e-16;
/// Above this argument the ascending series for J has lost too many digits
/// and the large-argument branch takes over.
const ASCENDING_MAX_T: f64 = 18.0;
/// Cancellation guard: max term over result magnitude.
const CANCEL_GUARD: f64 = 1e8;

/// J_nu(t) for real order nu >= -1/2 and real t >= 0.
pub fn bessel_j(nu: f64, t: f64) -> Result<SpecialValue> {
    assert!(nu >= -0.5, "order below -1/2 unsupported");
    if t < 0.0 {
        return Err(Error::InvalidSpec(format!("bessel_j: negative argument {t}")));
    }
    if t <= ASCENDING_MAX_T {
        return ascending_series(nu, Complex64::new(t, 0.0), true);
    }
    // large argument: half-integer orders reduce to trigonometric closed
    // forms; other orders use the Hankel expansion.
    let two_nu = 2.0 * nu;
    if (two_nu - two_nu.round()).abs() < 1e-12 && (two_nu.round() as i64).rem_euclid(2) == 1 {
        Ok(spherical_j(nu, t))
    } else {
        hankel_j(nu, t)
    }
}

/// I_nu(t) for real order nu >= -1/2 and real t >= 0. All-positive terms, so
/// the ascending series is accurate for any representable argument.
pub fn bessel_i(nu: f64, t: f64) -> Result<SpecialValue> {
    assert!(nu >= -0.5, "order below -1/2 unsupported");
    if t < 0.0 {
        return Err(Error::InvalidSpec(format!("bessel_i: negative argument {t}")));
    }
    if t > 700.0 {
        return Err(Error::RangeExceeded {
            arg: t,
            cancellation: f64::INFINITY,
        });
    }
    ascending_series(nu, Complex64::new(t, 0.0), false)
}

/// J_nu of a complex argument (ascending series only, guarded).
pub fn bessel_j_arg(nu: f64, w: Complex64) -> Result<SpecialValue> {
    if w.im == 0.0 && w.re >= 0.0 {
        bessel_j(nu, w.re)
    } else {
        ascending_series(nu, w, true)
    }
}

/// I_nu of a complex argument (ascending series only, guarded).
pub fn bessel_i_arg(nu: f64, w: Complex64) -> Result<SpecialValue> {
    if w.im == 0.0 && w.re >= 0.0 {
        bessel_i(nu, w.re)
    } else {
        ascending_series(nu, w, false)
    }
}

/// Shared ascending series sum_m s^m (w/2)^{nu+2m} / (m! Gamma(nu+m+1)),
/// with s = -1 for J and +1 for I.
fn ascending_series(nu: f64, w: Complex64, alternating: bool) -> Result<SpecialValue> {
    if w.norm() == 0.0 {
        // leading power: 0 for nu > 0, 1 for nu = 0, infinite for nu < 0
        if nu > 0.0 {
            return Ok(SpecialValue::exact(Complex64::new(0.0, 0.0)));
        }
        if nu == 0.0 {
            return Ok(SpecialValue::exact(Complex64::new(1.0, 0.0)));
        }
        return Err(Error::InvalidSpec(format!(
            "bessel order {nu} diverges at zero argument"
        )));
    }
    let half = w / 2.0;
    let mut term = half.powc(Complex64::new(nu, 0.0)) / gamma_raw(Complex64::new(nu + 1.0, 0.0));
    let z2 = half * half;
    let sign = if alternating { -1.0 } else { 1.0 };
    let mut sum = KahanComplexSum::new();
    let mut max_term: f64 = 0.0;
    let mut tail = f64::INFINITY;
    for m in 0..500 {
        sum.add(term);
        max_term = max_term.max(term.norm());
        let next = term * z2 * (sign / ((m as f64 + 1.0) * (nu + m as f64 + 1.0)));
        let ratio = next.norm() / term.norm().max(f64::MIN_POSITIVE);
        if ratio < 1.0 {
            // alternating decreasing tail <= next term; positive-term tail is
            // geometric with the (decreasing) ratio
            tail = if alternating && ratio < 1.0 {
                next.norm()
            } else {
                next.norm() / (1.0 - ratio)
            };
            if tail <= EPS * max_term {
                break;
            }
        }
        term = next;
    }
    let value = sum.value();
    // Real arguments stay in the guarded range (t <= 18), so the absolute
    // bound 4 eps max_term below is honest even at a zero of J; only complex
    // arguments can lose digits without limit.
    if alternating && w.im != 0.0 {
        let cancellation = max_term / value.norm().max(f64::MIN_POSITIVE);
        if cancellation > CANCEL_GUARD {
            return Err(Error::RangeExceeded {
                arg: w.norm(),
                cancellation,
            });
        }
    }
    let bound = tail.min(max_term) + 4.0 * EPS * max_term;
    Ok(SpecialValue::new(value, bound))
}

/// Half-integer orders at large argument: upward recurrence from the
/// cos/sin closed forms. Stable here because the order is far below t.
fn spherical_j(nu: f64, t: f64) -> SpecialValue {
    let amp = (2.0 / (std::f64::consts::PI * t)).sqrt();
    let mut jm1 = amp * t.cos(); // J_{-1/2}
    let mut j0 = amp * t.sin(); // J_{1/2}
    if (nu + 0.5).abs() < 1e-12 {
        return SpecialValue::from_real(jm1, 1e-14 * (amp + jm1.abs()));
    }
    let steps = (nu - 0.5).round() as usize;
    let mut order = 0.5;
    for _ in 0..steps {
        let next = (2.0 * order / t) * j0 - jm1;
        jm1 = j0;
        j0 = next;
        order += 1.0;
    }
    SpecialValue::from_real(j0, 1e-13 * (steps as f64 + 1.0) * (amp + j0.abs()))
}

/// Hankel large-argument expansion, remainder bounded by twice the first
/// omitted term. Requires t comfortably above nu^2.
fn hankel_j(nu: f64, t: f64) -> Result<SpecialValue> {
    if t < nu * nu {
        return Err(Error::RangeExceeded {
            arg: t,
            cancellation: f64::NAN,
        });
    }
    let mu = 4.0 * nu * nu;
    let mut p = KahanSum::new();
    let mut q = KahanSum::new();
    let mut c = 1.0f64; // a_m(nu) / t^m
    let mut last = f64::INFINITY;
    let mut m = 0usize;
    loop {
        let mag = c.abs();
        if mag >= last || mag < 1e-18 {
            break;
        }
        last = mag;
        match m % 4 {
            0 => p.add(c),
            1 => q.add(c),
            2 => p.add(-c),
            _ => q.add(-c),
        }
        c *= (mu - (2.0 * m as f64 + 1.0).powi(2)) / (8.0 * (m as f64 + 1.0) * t);
        m += 1;
        if m > 60 {
            break;
        }
    }
    let amp = (2.0 / (std::f64::consts::PI * t)).sqrt();
    let omega = t - nu * std::f64::consts::FRAC_PI_2 - std::f64::consts::FRAC_PI_4;
    let value = amp * (omega.cos() * p.value() - omega.sin() * q.value());
    let bound = amp * (2.0 * c.abs().min(last) + 8.0 * EPS * (t + 1.0));
    Ok(SpecialValue::from_real(value, bound))
}

/// K_nu(t) = int_0^inf exp(-t cosh u) cosh(nu u) du for complex order and
/// t > 0, by trapezoid refinement (geometric convergence: the integrand is
/// analytic and decays doubly exponentially).
pub fn bessel_k(nu: Complex64, t: f64, ctl: &QuadratureControls) -> Result<SpecialValue> {
    if t <= 0.0 {
        return Err(Error::InvalidSpec(format!("bessel_k: argument {t} <= 0")));
    }
    let integrand = |u: f64| -> Complex64 {
        let e = -t * u.cosh();
        if e < -745.0 {
            return Complex64::new(0.0, 0.0);
        }
        (nu * u).cosh() * e.exp()
    };
    let mut h = 0.5;
    let mut prev = trapezoid_halfline(&integrand, h);
    let mut err = f64::INFINITY;
    for _ in 0..ctl.max_level {
        h /= 2.0;
        let cur = trapezoid_halfline(&integrand, h);
        let new_err = (cur - prev).norm();
        prev = cur;
        if new_err <= ctl.target || new_err <= 4.0 * EPS * cur.norm() {
            err = new_err;
            break;
        }
        if new_err >= err && err.is_finite() {
            // refinement stalled
            return Err(Error::NoConvergence {
                estimate: new_err,
                target: ctl.target,
            });
        }
        err = new_err;
    }
    if err > ctl.target && err > 10.0 * EPS * prev.norm().max(1.0) {
        return Err(Error::NoConvergence {
            estimate: err,
            target: ctl.target,
        });
    }
    let bound = err + 4.0 * EPS * prev.norm() + 1e-300;
    Ok(SpecialValue::new(prev, bound))
}

/// Trapezoid sum over [0, inf) of an even-extension integrand:
/// h (g(0)/2 + sum_{j>=1} g(jh)), truncated when terms vanish.
fn trapezoid_halfline(g: &dyn Fn(f64) -> Complex64, h: f64) -> Complex64 {
    let mut acc = KahanComplexSum::new();
    acc.add(g(0.0) / 2.0);
    let mut dead = 0;
    for j in 1..100_000 {
        let v = g(j as f64 * h);
        acc.add(v);
        if v.norm() < 1e-320 {
            dead += 1;
            if dead >= 3 {
                break;
            }
        } else {
            dead = 0;
        }
    }
    acc.value() * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn j_minus_half_is_cosine() {
        // J_{-1/2}(x) = sqrt(2/(pi x)) cos x
        for &t in &[0.5, 1.0, 2.0, 3.0, 10.0] {
            let v = bessel_j(-0.5, t).unwrap();
            let reference = (2.0 / (PI * t)).sqrt() * t.cos();
            assert!((v.value.re - reference).abs() < 1e-11, "t={t}");
        }
    }

    #[test]
    fn i_minus_half_is_cosh() {
        for &t in &[0.5, 1.0, 2.0, 3.0, 10.0] {
            let v = bessel_i(-0.5, t).unwrap();
            let reference = (2.0 / (PI * t)).sqrt() * t.cosh();
            assert!((v.value.re - reference).abs() < 1e-11 * reference.abs(), "t={t}");
        }
    }

    #[test]
    fn zero_argument_positive_order() {
        assert_eq!(bessel_j(1.5, 0.0).unwrap().value.re, 0.0);
        assert_eq!(bessel_i(2.0, 0.0).unwrap().value.re, 0.0);
    }

    #[test]
    fn j0_at_one_matches_quadrature_oracle() {
        // (1/pi) int_0^pi cos(sin theta) dtheta by Simpson refinement
        let f = |theta: f64| (theta.sin()).cos();
        let n = 1 << 12;
        let h = PI / n as f64;
        let mut s = 0.0;
        for i in 0..n {
            let a = i as f64 * h;
            s += h / 6.0 * (f(a) + 4.0 * f(a + h / 2.0) + f(a + h));
        }
        let oracle = s / PI;
        let v = bessel_j(0.0, 1.0).unwrap();
        assert!((v.value.re - oracle).abs() < 1e-12);
    }

    #[test]
    fn k_half_closed_form() {
        // K_{1/2}(z) = sqrt(pi/(2z)) e^{-z}
        for &t in &[0.5, 1.0, 3.0, 10.0] {
            let v = bessel_k(Complex64::new(0.5, 0.0), t, &QuadratureControls::default()).unwrap();
            let reference = (PI / (2.0 * t)).sqrt() * (-t).exp();
            assert!((v.value.re - reference).abs() < 1e-11, "t={t}");
        }
    }

    #[test]
    fn k_even_in_order() {
        let nu = Complex64::new(0.7, 0.3);
        let a = bessel_k(nu, 2.0, &QuadratureControls::default()).unwrap();
        let b = bessel_k(-nu, 2.0, &QuadratureControls::default()).unwrap();
        assert!((a.value - b.value).norm() < 1e-13);
    }

    #[test]
    fn k_imaginary_order_stable_under_refinement() {
        let nu = Complex64::new(0.0, 2.0);
        let coarse = bessel_k(nu, 1.0, &QuadratureControls::default()).unwrap();
        let fine = bessel_k(
            nu,
            1.0,
            &QuadratureControls {
                max_level: 18,
                target: 1e-15,
            },
        )
        .unwrap();
        assert!((coarse.value - fine.value).norm() < 1e-11);
    }

    #[test]
    fn k_rejects_nonpositive_argument() {
        assert!(bessel_k(Complex64::new(1.0, 0.0), 0.0, &QuadratureControls::default()).is_err());
    }

    #[test]
    fn large_argument_half_integer_matches_hankel_region() {
        // continuity across the ascending/large-argument switch
        for &nu in &[0.5, 1.5, 5.5] {
            let below = bessel_j(nu, 17.9).unwrap().value.re;
            let above = bessel_j(nu, 18.1).unwrap().value.re;
            assert!((below - above).abs() < 0.05, "nu={nu}");
        }
    }

    #[test]
    fn hankel_matches_ascending_at_switch() {
        // non-half-integer order: both branches near t = 18
        for &nu in &[0.0, 0.25, 2.0] {
            let asc = ascending_series(nu, Complex64::new(17.5, 0.0), true)
                .unwrap()
                .value
                .re;
            let han = hankel_j(nu, 17.5).unwrap();
            assert!(
                (asc - han.value.re).abs() < 1e-9 + han.abs_error_bound,
                "nu={nu}: {asc} vs {}",
                han.value.re
            );
        }
    }

    #[test]
    fn i_bound_certifies_envelope_inequality() {
        // (t/2)^{-nu} I_nu(t) Gamma(nu+1) <= e^t
        for &nu in &[-0.25, 0.0, 1.0, 5.5] {
            for i in 1..=20 {
                let t = i as f64;
                let iv = bessel_i(nu, t).unwrap().value.re;
                let lhs = (t / 2.0f64).powf(-nu) * iv * gamma_raw(Complex64::new(nu + 1.0, 0.0)).re;
                assert!(lhs <= t.exp() * (1.0 + 1e-12), "nu={nu} t={t}");
            }
        }
    }

    #[test]
    fn j_limiting_relation_at_zero() {
        // y^{-nu} J_nu(y) Gamma(nu+1) 2^nu -> 1 monotonically on y = 10^{-1..-6}
        for &nu in &[-0.25, 0.0, 1.0, 5.5] {
            let mut prev_dev = f64::INFINITY;
            for e in 1..=6 {
                let y = 10f64.powi(-e);
                let j = bessel_j_arg(nu, Complex64::new(y, 0.0)).unwrap().value.re;
                let scaled = y.powf(-nu) * j * gamma_raw(Complex64::new(nu + 1.0, 0.0)).re
                    * 2f64.powf(nu);
                let dev = (scaled - 1.0).abs();
                assert!(dev <= prev_dev + 1e-15, "nu={nu} y={y}");
                prev_dev = dev;
            }
            assert!(prev_dev < 1e-10);
        }
    }
}
