//! Complex Gamma function via the Lanczos approximation (Godfrey coefficient
//! set, g = 607/128), with reflection for Re(s) < 1/2.

use num_complex::Complex64;

use super::SpecialValue;
use crate::{Error, Result};

const G: f64 = 4.7421875; // 607/128

const LANCZOS: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

fn lanczos_sum(z: Complex64) -> Complex64 {
    // A_g(z) = c0 + sum c_k / (z - 1 + k)
    let mut a = Complex64::new(LANCZOS[0], 0.0);
    for (k, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + (k as f64 - 1.0));
    }
    a
}

fn gamma_positive(z: Complex64) -> Complex64 {
    // Re(z) >= 1/2
    let t = z + (G - 0.5);
    let log = (z - 0.5) * t.ln() - t + 0.5 * (2.0 * std::f64::consts::PI).ln();
    log.exp() * lanczos_sum(z)
}

/// Gamma of a complex argument, with a relative-error model of a few ulps
/// times a mild growth factor.
pub fn gamma(s: Complex64) -> Result<SpecialValue> {
    if is_nonpositive_integer(s) {
        return Err(Error::PoleAt(s));
    }
    let value = gamma_raw(s);
    // Lanczos with the Godfrey set is accurate to ~1e-14 relative on the
    // tested domain |s| <= 50; reflection can lose a couple more digits near
    // the poles, absorbed into the |sin| factor below.
    let mut rel = 2e-14;
    if s.re < 0.5 {
        let sin = (std::f64::consts::PI * s).sin().norm();
        rel += 1e-15 / sin.max(1e-3);
    }
    Ok(SpecialValue::new(value, value.norm() * rel.min(1e-10)))
}

/// Gamma without the error-bound wrapper; NaN/Inf propagate on poles.
pub fn gamma_raw(s: Complex64) -> Complex64 {
    if s.re >= 0.5 {
        gamma_positive(s)
    } else {
        // reflection: Gamma(s) = pi / (sin(pi s) Gamma(1 - s))
        let pi = std::f64::consts::PI;
        let sin = (pi * s).sin();
        pi / (sin * gamma_positive(Complex64::new(1.0, 0.0) - s))
    }
}

/// log |Gamma| plus arg, for magnitudes outside the f64 range.
/// Principal branch on Re(s) >= 1/2; reflection is not supported here.
pub fn ln_gamma(s: Complex64) -> Complex64 {
    assert!(s.re >= 0.5, "ln_gamma requires Re(s) >= 1/2");
    let t = s + (G - 0.5);
    (s - 0.5) * t.ln() - t + 0.5 * (2.0 * std::f64::consts::PI).ln() + lanczos_sum(s).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent oracle: recur the argument up until Re > 40, then apply the
    /// Stirling series with 14 terms. Shares no code with the Lanczos path.
    pub(crate) fn gamma_stirling_oracle(mut z: Complex64) -> Complex64 {
        let mut shift = Complex64::new(1.0, 0.0);
        while z.re < 40.0 {
            shift *= z;
            z += 1.0;
        }
        // Stirling: ln G(z) ~ (z-1/2)ln z - z + ln(2 pi)/2 + sum B_{2n}/(2n(2n-1) z^{2n-1})
        const B: [f64; 14] = [
            1.0 / 12.0,
            -1.0 / 360.0,
            1.0 / 1260.0,
            -1.0 / 1680.0,
            1.0 / 1188.0,
            -691.0 / 360360.0,
            1.0 / 156.0,
            -3617.0 / 122400.0,
            43867.0 / 244188.0,
            -174611.0 / 125400.0,
            77683.0 / 5796.0,
            -236364091.0 / 1506960.0,
            657931.0 / 300.0,
            -3392780147.0 / 93960.0,
        ];
        let mut series = Complex64::new(0.0, 0.0);
        let zinv2 = 1.0 / (z * z);
        let mut zpow = 1.0 / z;
        for &b in B.iter() {
            series += b * zpow;
            zpow *= zinv2;
        }
        let lg = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * std::f64::consts::PI).ln() + series;
        lg.exp() / shift
    }

    #[test]
    fn half_is_sqrt_pi() {
        let g = gamma(c(0.5, 0.0)).unwrap();
        assert!((g.value.re - std::f64::consts::PI.sqrt()).abs() < 1e-14);
        assert!(g.value.im.abs() < 1e-15);
    }

    #[test]
    fn five_is_factorial() {
        let g = gamma(c(5.0, 0.0)).unwrap();
        assert!((g.value.re - 24.0).abs() < 24.0 * 1e-13);
    }

    #[test]
    fn complex_point_matches_stirling_oracle() {
        let z = c(0.25, 3.0);
        let g = gamma(z).unwrap().value;
        let oracle = gamma_stirling_oracle(z);
        assert!((g - oracle).norm() < 1e-12 * oracle.norm().max(1.0));
    }

    #[test]
    fn relative_error_on_grid() {
        for &re in &[-5.3, -0.7, 0.25, 1.0, 3.5, 12.0, 30.0] {
            for &im in &[-20.0, -3.0, 0.5, 7.0, 40.0] {
                let z = c(re, im);
                if z.norm() > 50.0 {
                    continue;
                }
                let g = gamma(z).unwrap();
                let oracle = gamma_stirling_oracle(z);
                assert!(
                    (g.value - oracle).norm() <= 1e-13 * oracle.norm(),
                    "gamma({z}) off by {:e}",
                    (g.value - oracle).norm() / oracle.norm()
                );
                assert!((g.value - oracle).norm() <= g.abs_error_bound.max(1e-300) * 10.0 + 1e-16 * oracle.norm());
            }
        }
    }

    #[test]
    fn pole_rejected() {
        assert!(matches!(gamma(c(0.0, 0.0)), Err(Error::PoleAt(_))));
        assert!(matches!(gamma(c(-3.0, 0.0)), Err(Error::PoleAt(_))));
    }

    #[test]
    fn recurrence_consistency() {
        let z = c(1.7, -2.2);
        let a = gamma_raw(z + 1.0);
        let b = z * gamma_raw(z);
        assert!((a - b).norm() < 1e-13 * a.norm());
    }
}
