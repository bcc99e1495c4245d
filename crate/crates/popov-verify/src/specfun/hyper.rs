//! Gauss ₂F₁ (|z| < 1, real z), Kummer ₁F₁ and the Humbert Φ₃ double series,
//! all with ratio-test tail bounds.

use num_complex::Complex64;

use super::SpecialValue;
use crate::kahan::KahanComplexSum;
use crate::{Error, Result};

const EPS: f64 = 2.2e-16;
const MAX_TERMS: usize = 20_000;

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// Gauss series for ₂F₁(a,b;c;z), real z in (-1,1). Arguments at or below
/// -1/2 always route through Pfaff's map z -> z/(z-1) first, so both code
/// paths are deterministic.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<SpecialValue> {
    if is_nonpositive_integer(c) {
        return Err(Error::PoleAt(c));
    }
    if z.abs() >= 1.0 {
        return Err(Error::InvalidSpec(format!("hyp2f1: |z| >= 1 (z = {z})")));
    }
    if z <= -0.5 {
        // Pfaff: (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)), mapped argument in (0, 1/2]
        let zp = z / (z - 1.0);
        let series = gauss_series(a, c - b, c, zp)?;
        let factor = Complex64::new(1.0 - z, 0.0).powc(-a);
        return Ok(SpecialValue::new(
            factor * series.value,
            factor.norm() * series.abs_error_bound + 2.0 * EPS * (factor * series.value).norm(),
        ));
    }
    gauss_series(a, b, c, z)
}

/// Direct Gauss series with its certified tail (no transformation).
pub fn gauss_series(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<SpecialValue> {
    if is_nonpositive_integer(c) {
        return Err(Error::PoleAt(c));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = KahanComplexSum::new();
    let mut max_term: f64 = 0.0;
    let az = z.abs();
    let (na, nb, nc) = (a.norm(), b.norm(), c.norm());
    for l in 0..MAX_TERMS {
        sum.add(term);
        max_term = max_term.max(term.norm());
        let lf = l as f64;
        let next = term * ((a + lf) * (b + lf) * z) / ((c + lf) * (lf + 1.0));
        // upper bound for every later ratio, decreasing in l once l > |c|
        let l1 = lf + 1.0;
        if l1 > nc + 1.0 {
            let ratio_bound = az * (l1 + na) * (l1 + nb) / ((l1 + 1.0) * (l1 - nc));
            if ratio_bound < 1.0 {
                let tail = next.norm() / (1.0 - ratio_bound);
                if tail <= EPS * max_term.max(1.0) {
                    let value = sum.value();
                    let bound = tail + 4.0 * EPS * max_term * (l as f64).sqrt();
                    return Ok(SpecialValue::new(value, bound));
                }
            }
        }
        term = next;
    }
    Err(Error::NoConvergence {
        estimate: term.norm(),
        target: EPS * max_term.max(1.0),
    })
}

/// Euler transformation route: (1-z)^{c-a-b} ₂F₁(c-a, c-b; c; z).
pub fn hyp2f1_euler(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<SpecialValue> {
    let series = gauss_series(c - a, c - b, c, z)?;
    let factor = Complex64::new(1.0 - z, 0.0).powc(c - a - b);
    Ok(SpecialValue::new(
        factor * series.value,
        factor.norm() * series.abs_error_bound + 2.0 * EPS * (factor * series.value).norm(),
    ))
}

/// Pfaff transformation route, callable for any |z| < 1 with z/(z-1) in (-1,1).
pub fn hyp2f1_pfaff(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<SpecialValue> {
    let zp = z / (z - 1.0);
    if zp.abs() >= 1.0 {
        return Err(Error::InvalidSpec(format!("pfaff map leaves unit disc: {zp}")));
    }
    let series = gauss_series(a, c - b, c, zp)?;
    let factor = Complex64::new(1.0 - z, 0.0).powc(-a);
    Ok(SpecialValue::new(
        factor * series.value,
        factor.norm() * series.abs_error_bound + 2.0 * EPS * (factor * series.value).norm(),
    ))
}

/// Kummer series ₁F₁(a; b; z).
pub fn hyp1f1(a: Complex64, b: Complex64, z: Complex64) -> Result<SpecialValue> {
    if is_nonpositive_integer(b) {
        return Err(Error::PoleAt(b));
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = KahanComplexSum::new();
    let mut max_term: f64 = 0.0;
    let (na, nb, az) = (a.norm(), b.norm(), z.norm());
    for l in 0..MAX_TERMS {
        sum.add(term);
        max_term = max_term.max(term.norm());
        let lf = l as f64;
        let next = term * (a + lf) * z / ((b + lf) * (lf + 1.0));
        let l1 = lf + 1.0;
        if l1 > nb + 1.0 {
            let ratio_bound = az * (l1 + na) / ((l1 + 1.0) * (l1 - nb));
            if ratio_bound < 1.0 {
                let tail = next.norm() / (1.0 - ratio_bound);
                if tail <= EPS * max_term.max(1.0) {
                    return Ok(SpecialValue::new(
                        sum.value(),
                        tail + 4.0 * EPS * max_term * (l as f64).sqrt(),
                    ));
                }
            }
        }
        term = next;
    }
    Err(Error::NoConvergence {
        estimate: term.norm(),
        target: EPS * max_term.max(1.0),
    })
}

/// Humbert Φ₃(b; c; w, u) = Σ_{k,m} (b)_k / (c)_{k+m} · w^k u^m / (k! m!),
/// summed by anti-diagonals k+m = s with a factorial-decay majorant tail.
pub fn humbert_phi3(
    b: Complex64,
    c: Complex64,
    w: Complex64,
    u: Complex64,
) -> Result<SpecialValue> {
    if is_nonpositive_integer(c) {
        return Err(Error::PoleAt(c));
    }
    let mut sum = KahanComplexSum::new();
    let mut max_mag: f64 = 0.0;
    let nb = b.norm();
    let nc = c.norm();
    let r = w.norm() + u.norm();

    // Majorant for anti-diagonal s: since (|b|)_k is increasing for k >= 1,
    //   sum_{k+m=s} |term| <= max(1, (|b|)_s) / |(c)_s| * r^s / s!.
    let mut poch_b_abs = 1.0_f64; // (|b|)_s
    let mut c_prod_inv = 1.0_f64; // 1 / |(c)_s|
    let mut r_pow_fact = 1.0_f64; // r^s / s!
    for s in 0..2000usize {
        let sf = s as f64;
        let mut diag = Complex64::new(0.0, 0.0);
        let c_s_inv = Complex64::new(1.0, 0.0) / pochhammer(c, s);
        let mut row = c_s_inv; // (b)_k w^k / (k! (c)_s) at k = 0, times u^m/m!
        for k in 0..=s {
            let m = s - k;
            diag += row * u.powu(m as u32) / factorial(m);
            row = row * (b + k as f64) * w / (k as f64 + 1.0);
        }
        sum.add(diag);
        max_mag = max_mag.max(diag.norm());

        let major_next =
            poch_b_abs.max(1.0) * (nb + sf) * c_prod_inv / (c + sf).norm() * r_pow_fact * r
                / (sf + 1.0);
        if sf + 1.0 > nc + 1.0 {
            // every later diagonal ratio is below this, which is < 1 here
            let ratio = (nb + sf + 1.0) * r / ((sf + 2.0 - nc) * (sf + 2.0));
            if ratio < 0.5 {
                let tail = major_next / (1.0 - ratio);
                if tail <= EPS * max_mag.max(1.0) {
                    return Ok(SpecialValue::new(
                        sum.value(),
                        tail + 4.0 * EPS * max_mag * (sf + 1.0),
                    ));
                }
            }
        }
        poch_b_abs *= nb + sf;
        c_prod_inv /= (c + sf).norm();
        r_pow_fact *= r / (sf + 1.0);
    }
    Err(Error::NoConvergence {
        estimate: r_pow_fact,
        target: EPS,
    })
}

fn pochhammer(a: Complex64, n: usize) -> Complex64 {
    let mut p = Complex64::new(1.0, 0.0);
    for j in 0..n {
        p *= a + j as f64;
    }
    p
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}
