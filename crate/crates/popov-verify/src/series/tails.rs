//! Closed-form tail certificates used by the series evaluators.

/// Upper bound for the incomplete-gamma-style integral
/// int_z^inf u^b e^{-u} du, valid whenever z > max(b, 0).
///
/// For b <= 0 the integrand is below z^b e^{-u}; for b > 0 integrate by
/// parts once and close the geometric-style recursion with b/z < 1.
pub fn exp_power_integral_bound(b: f64, z: f64) -> Option<f64> {
    if z <= 0.0 || z <= b {
        return None;
    }
    if b <= 0.0 {
        return Some(z.powf(b) * (-z).exp());
    }
    // int_z^inf u^b e^-u du = z^b e^-z + b int_z^inf u^{b-1} e^-u du
    //                      <= z^b e^-z / (1 - b/z)
    Some(z.powf(b) * (-z).exp() / (1.0 - b / z))
}

/// Certified bound for the sub-geometric tail sum
/// sum_{P > M} P^a e^{-c sqrt(P)}, c > 0.
///
/// Valid once the summand is decreasing (sqrt(M) >= 2a/c) and the
/// substituted integral bound applies (c sqrt(M) > 2a + 1).
pub fn power_exp_sqrt_tail(a: f64, c: f64, m: f64) -> Option<f64> {
    if c <= 0.0 || m < 1.0 {
        return None;
    }
    let root = m.sqrt();
    if root < 2.0 * a.max(0.0) / c {
        return None;
    }
    // sum_{P>M} f(P) <= int_M^inf t^a e^{-c sqrt t} dt
    //               = 2 c^{-(2a+2)} int_{c sqrt M}^inf v^{2a+1} e^{-v} dv
    let b = 2.0 * a + 1.0;
    let z = c * root;
    let inner = exp_power_integral_bound(b, z)?;
    Some(2.0 * c.powf(-(2.0 * a + 2.0)) * inner)
}

/// C(a) with |K_nu(t)| <= C(|Re nu|) e^{-t} for t >= 1:
/// C(a) = int_0^inf e^{-(cosh u - 1)} cosh(a u) du, evaluated by a fine
/// trapezoid with a small safety inflation.
pub fn bessel_k_envelope_const(a: f64) -> f64 {
    let a = a.abs();
    let h = 0.005f64;
    let mut sum = 0.5; // half weight at u = 0 where the integrand is 1
    let mut u = h;
    loop {
        let integrand = (-(u.cosh() - 1.0)).exp() * (a * u).cosh();
        if integrand < 1e-18 && u > 1.0 {
            break;
        }
        sum += integrand;
        u += h;
        if u > 60.0 {
            break;
        }
    }
    sum * h * 1.02
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integral_bound_dominates_quadrature() {
        // compare against Simpson quadrature of the actual integral
        for &(b, z) in &[(0.0, 2.0), (1.5, 4.0), (3.0, 10.0), (-0.5, 1.0)] {
            let bound = exp_power_integral_bound(b, z).unwrap();
            let mut acc = 0.0;
            let h = 1e-4;
            let mut u = z;
            while u < z + 60.0 {
                let f = |t: f64| t.powf(b) * (-t).exp();
                acc += h / 6.0 * (f(u) + 4.0 * f(u + h / 2.0) + f(u + h));
                u += h;
            }
            assert!(bound >= acc, "b={b} z={z}: {bound} < {acc}");
            assert!(bound <= acc * 10.0 + 1e-12, "bound too loose: {bound} vs {acc}");
        }
    }

    #[test]
    fn sqrt_tail_dominates_direct_sum() {
        for &(a, c, m) in &[(0.5, 2.0, 30.0), (2.0, 3.0, 50.0), (-0.25, 1.0, 40.0)] {
            let bound = power_exp_sqrt_tail(a, c, m).unwrap();
            let mut direct = 0.0;
            let mut p = m + 1.0;
            while p < m + 200_000.0 {
                let t = p.powf(a) * (-c * p.sqrt()).exp();
                direct += t;
                if t < direct * 1e-18 {
                    break;
                }
                p += 1.0;
            }
            assert!(bound >= direct, "a={a} c={c} m={m}: {bound} < {direct}");
        }
    }

    #[test]
    fn k_envelope_exceeds_sampled_k_values() {
        use crate::specfun::{bessel_k, QuadratureControls};
        use num_complex::Complex64;
        let ctl = QuadratureControls::default();
        for &nu in &[0.0, 0.5, 1.5, 2.5] {
            let c = bessel_k_envelope_const(nu);
            for &t in &[1.0, 2.0, 5.0, 10.0] {
                let k = bessel_k(Complex64::new(nu, 0.0), t, &ctl).unwrap();
                assert!(
                    k.value.norm() <= c * (-t).exp() * (1.0 + 1e-10),
                    "nu={nu} t={t}"
                );
            }
        }
    }
}
