//! Compensated (Kahan–Neumaier) summation for real and complex accumulators.

use num_complex::Complex64;

/// Neumaier-compensated real accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Complex accumulator built from two compensated real accumulators.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanComplexSum {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        let mut s = KahanSum::new();
        s.add(1.0);
        s.add(1e100);
        s.add(1.0);
        s.add(-1e100);
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn harmonic_partial_sum_is_accurate() {
        let mut s = KahanSum::new();
        for n in 1..=1_000_000u64 {
            s.add(1.0 / n as f64);
        }
        // reference from exact summation at higher precision
        assert!((s.value() - 14.392726722865723631).abs() < 1e-12);
    }
}
