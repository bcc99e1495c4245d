//! Riesz-typical partial sums (1/Gamma(q+1)) sum'_{0 <= n <= x} r_k(n) (x-n)^q.

use num_complex::Complex64;

use crate::arith::r_k;
use crate::kahan::KahanSum;
use crate::specfun::gamma_raw;
use crate::Result;

/// The primed sum halves the boundary term n = x when x is an integer; for
/// q > 0 that term vanishes anyway, so the prime only matters at q = 0.
pub fn riesz_sum(k: u32, q: f64, x: f64) -> Result<f64> {
    debug_assert!(q >= 0.0 && x > 0.0);
    let mut acc = KahanSum::new();
    let top = x.floor() as usize;
    let x_is_integral = x == top as f64;
    for n in 0..=top {
        let r = if n == 0 { 1.0 } else { r_k(k, n)? as f64 };
        if r == 0.0 {
            continue;
        }
        let mut term = r * (x - n as f64).powf(q);
        if x_is_integral && n == top && q == 0.0 {
            term *= 0.5;
        }
        acc.add(term);
    }
    let g = gamma_raw(Complex64::new(q + 1.0, 0.0)).re;
    Ok(acc.value() / g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_enumeration_k1() {
        // r_1: 1, 2, 0, 0, 2, ... -> 1*2.3 + 2*1.3 = 4.9
        let v = riesz_sum(1, 1.0, 2.3).unwrap();
        assert!((v - 4.9).abs() < 1e-13);
    }

    #[test]
    fn integral_x_halves_boundary() {
        // q = 0, x = 1, k = 2: r_2(0) + r_2(1)/2 = 1 + 2 = 3
        let v = riesz_sum(2, 0.0, 1.0).unwrap();
        assert!((v - 3.0).abs() < 1e-14);
    }

    #[test]
    fn only_origin_below_one() {
        // q = 2, x < 1: x^2 / Gamma(3) = x^2 / 2
        let x = 0.73;
        let v = riesz_sum(3, 2.0, x).unwrap();
        assert!((v - x * x / 2.0).abs() < 1e-15);
    }
}
