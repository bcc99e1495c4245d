//! Exact arithmetic sequences: r_k(n), sigma_z(n), Ramanujan tau, and
//! character twists, with write-once-extend caches.

use std::sync::RwLock;

use num_complex::Complex64;

use super::character::DirichletCharacter;
use crate::{Error, Result};

/// Default ceiling on sequence indices; requests beyond it are a hard error
/// rather than an unbounded allocation.
pub const DEFAULT_MAX_INDEX: usize = 1 << 22;

/// Table of r_1(n) for n = 0..=n_max: 1 at 0, 2 at perfect squares, else 0.
pub fn r1_table(n_max: usize) -> Vec<u64> {
    let mut t = vec![0u64; n_max + 1];
    t[0] = 1;
    let mut m = 1usize;
    while m * m <= n_max {
        t[m * m] = 2;
        m += 1;
    }
    t
}

/// Table of r_k(n) for n = 0..=n_max by k-fold convolution of the theta
/// coefficients r_1. Prefix-stable: a longer table agrees on shared indices.
pub fn rk_table(k: u32, n_max: usize) -> Vec<u64> {
    assert!(k >= 1);
    let base = r1_table(n_max);
    let mut acc = base.clone();
    for _ in 1..k {
        let mut next = vec![0u64; n_max + 1];
        for (n, slot) in next.iter_mut().enumerate() {
            // r_{j+1}(n) = sum_{m^2 <= n} r_1(m^2-part) * r_j(n - m^2)
            let mut s = acc[n]; // m = 0 contribution
            let mut m = 1usize;
            while m * m <= n {
                s += 2 * acc[n - m * m];
                m += 1;
            }
            *slot = s;
        }
        acc = next;
    }
    acc
}

/// Exact r_k(n): number of integer vectors (a_1..a_k) with sum of squares n.
pub fn r_k(k: u32, n: usize) -> Result<u64> {
    if n > DEFAULT_MAX_INDEX {
        return Err(Error::HorizonOverflow {
            index: n,
            max: DEFAULT_MAX_INDEX,
        });
    }
    Ok(rk_table(k, n)[n])
}

/// sigma_z(n) = sum over divisors d of n of d^z, complex exponent.
pub fn sigma_complex(z: Complex64, n: u64) -> Complex64 {
    assert!(n >= 1);
    divisors(n)
        .into_iter()
        .map(|d| Complex64::new(d as f64, 0.0).powc(z))
        .sum()
}

/// sigma_k(n) in exact integer arithmetic for nonnegative integer exponent.
pub fn sigma_int(k: u32, n: u64) -> u128 {
    assert!(n >= 1);
    divisors(n).into_iter().map(|d| (d as u128).pow(k)).sum()
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Index ceiling for the tau q-expansion table.
pub const TAU_HORIZON: usize = 1 << 14;

/// Coefficients of q * prod_{m>=1} (1 - q^m)^24 up to q^{n_max}, exact.
///
/// The Euler product is expanded by the pentagonal-number theorem and raised
/// to the 24th power by repeated sparse multiplication.
pub fn tau_table(n_max: usize) -> Vec<i128> {
    // Euler function Phi(q) = sum_j (-1)^j q^{j(3j-1)/2} over j in Z
    let mut pentagonal: Vec<(usize, i128)> = vec![(0, 1)];
    let mut j = 1i64;
    loop {
        let e1 = (j * (3 * j - 1) / 2) as usize;
        let e2 = (j * (3 * j + 1) / 2) as usize;
        if e1 > n_max && e2 > n_max {
            break;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        if e1 <= n_max {
            pentagonal.push((e1, sign));
        }
        if e2 <= n_max {
            pentagonal.push((e2, sign));
        }
        j += 1;
    }
    let mut acc = vec![0i128; n_max + 1];
    acc[0] = 1;
    for _ in 0..24 {
        let mut next = vec![0i128; n_max + 1];
        for &(e, s) in &pentagonal {
            for n in e..=n_max {
                if acc[n - e] != 0 {
                    next[n] += s * acc[n - e];
                }
            }
        }
        acc = next;
    }
    // shift by the leading q
    let mut shifted = vec![0i128; n_max + 1];
    for n in 1..=n_max {
        shifted[n] = acc[n - 1];
    }
    shifted
}

/// Ramanujan tau(n), coefficient of q^n in q prod (1-q^m)^24.
pub fn tau(n: usize) -> Result<i128> {
    if n == 0 || n > TAU_HORIZON {
        return Err(Error::HorizonOverflow {
            index: n,
            max: TAU_HORIZON,
        });
    }
    Ok(tau_table(n)[n])
}

/// Coefficient source for the series engine: a(n) for n >= 1 with a crude
/// growth bound |a(n)| <= c * n^g used in tail certificates.
#[derive(Debug)]
pub struct ArithmeticSequence {
    kind: SequenceKind,
    max_index: usize,
    // write-once-extend cache of a(1..=len)
    cache: RwLock<Vec<Complex64>>,
}

#[derive(Debug, Clone)]
pub enum SequenceKind {
    /// r_k(n) (note: n = 0 carries weight 1 and is handled by identities as
    /// a boundary term; the cache covers n >= 1)
    SumOfSquares(u32),
    /// sigma_z(n), complex exponent
    Divisor(Complex64),
    RamanujanTau,
    /// chi(n) times a base sequence (or chi(n) alone)
    CharacterTwist {
        base: Option<Box<SequenceKind>>,
        chi: DirichletCharacter,
    },
}

impl SequenceKind {
    fn raw_value(&self, n: usize, scratch: &RkScratch) -> Complex64 {
        match self {
            SequenceKind::SumOfSquares(_) => Complex64::new(scratch.rk[n] as f64, 0.0),
            SequenceKind::Divisor(z) => sigma_complex(*z, n as u64),
            SequenceKind::RamanujanTau => Complex64::new(scratch.tau[n] as f64, 0.0),
            SequenceKind::CharacterTwist { base, chi } => {
                let b = match base {
                    Some(inner) => inner.raw_value(n, scratch),
                    None => Complex64::new(1.0, 0.0),
                };
                b * chi.eval(n as u64)
            }
        }
    }

    fn needs_rk(&self) -> Option<u32> {
        match self {
            SequenceKind::SumOfSquares(k) => Some(*k),
            SequenceKind::CharacterTwist {
                base: Some(inner), ..
            } => inner.needs_rk(),
            _ => None,
        }
    }

    fn needs_tau(&self) -> bool {
        match self {
            SequenceKind::RamanujanTau => true,
            SequenceKind::CharacterTwist {
                base: Some(inner), ..
            } => inner.needs_tau(),
            _ => false,
        }
    }

    /// (c, g) with |a(n)| <= c n^g for every n >= 1.
    pub fn growth_bound(&self) -> (f64, f64) {
        match self {
            // lattice box: r_k(n) <= (2 sqrt(n) + 1)^k <= 3^k n^{k/2}
            SequenceKind::SumOfSquares(k) => (3f64.powi(*k as i32), *k as f64 / 2.0),
            // at most n divisors, each |d^z| <= n^{max(Re z, 0)}
            SequenceKind::Divisor(z) => (1.0, 1.0 + z.re.max(0.0)),
            // Deligne with divisor slack: |tau(n)| <= 2 n^{13/2}
            SequenceKind::RamanujanTau => (2.0, 6.5),
            SequenceKind::CharacterTwist { base, .. } => match base {
                Some(inner) => inner.growth_bound(),
                None => (1.0, 0.0),
            },
        }
    }
}

struct RkScratch {
    rk: Vec<u64>,
    tau: Vec<i128>,
}

impl ArithmeticSequence {
    pub fn new(kind: SequenceKind) -> Self {
        Self {
            kind,
            max_index: DEFAULT_MAX_INDEX,
            cache: RwLock::new(Vec::new()),
        }
    }

    pub fn sum_of_squares(k: u32) -> Self {
        Self::new(SequenceKind::SumOfSquares(k))
    }

    pub fn divisor(z: Complex64) -> Self {
        Self::new(SequenceKind::Divisor(z))
    }

    pub fn ramanujan_tau() -> Self {
        Self::new(SequenceKind::RamanujanTau)
    }

    pub fn character(chi: DirichletCharacter) -> Self {
        Self::new(SequenceKind::CharacterTwist { base: None, chi })
    }

    pub fn with_max_index(mut self, max: usize) -> Self {
        self.max_index = max;
        self
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    pub fn growth_bound(&self) -> (f64, f64) {
        self.kind.growth_bound()
    }

    /// a(n) for n >= 1, extending the cache if needed. Previously returned
    /// values never change.
    pub fn value(&self, n: usize) -> Result<Complex64> {
        if n == 0 {
            return Err(Error::InvalidSpec("sequence index 0".into()));
        }
        if n > self.max_index {
            return Err(Error::HorizonOverflow {
                index: n,
                max: self.max_index,
            });
        }
        {
            let cache = self.cache.read().unwrap();
            if n <= cache.len() {
                return Ok(cache[n - 1]);
            }
        }
        self.extend_to(n.next_power_of_two().min(self.max_index).max(n))?;
        let cache = self.cache.read().unwrap();
        Ok(cache[n - 1])
    }

    fn extend_to(&self, target: usize) -> Result<()> {
        let mut cache = self.cache.write().unwrap();
        if cache.len() >= target {
            return Ok(());
        }
        if self.kind.needs_tau() && target > TAU_HORIZON {
            return Err(Error::HorizonOverflow {
                index: target,
                max: TAU_HORIZON,
            });
        }
        let scratch = RkScratch {
            rk: match self.kind.needs_rk() {
                Some(k) => rk_table(k, target),
                None => Vec::new(),
            },
            tau: if self.kind.needs_tau() {
                tau_table(target)
            } else {
                Vec::new()
            },
        };
        let old = cache.len();
        for n in old + 1..=target {
            let v = self.kind.raw_value(n, &scratch);
            cache.push(v);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force lattice oracle: enumerate all (a_1..a_k) with |a_i| <= sqrt(n).
    pub(crate) fn r_k_brute(k: u32, n: usize) -> u64 {
        fn recurse(k: u32, rem: i64) -> u64 {
            if k == 0 {
                return u64::from(rem == 0);
            }
            let mut total = 0;
            let mut a = 0i64;
            while a * a <= rem {
                let c = recurse(k - 1, rem - a * a);
                total += if a == 0 { c } else { 2 * c };
                a += 1;
            }
            total
        }
        recurse(k, n as i64)
    }

    #[test]
    fn r1_perfect_squares() {
        assert_eq!(r_k(1, 4).unwrap(), 2);
        assert_eq!(r_k(1, 3).unwrap(), 0);
        assert_eq!(r_k(1, 0).unwrap(), 1);
    }

    #[test]
    fn r2_small_values() {
        assert_eq!(r_k(2, 0).unwrap(), 1);
        assert_eq!(r_k(2, 1).unwrap(), 4);
        assert_eq!(r_k(4, 1).unwrap(), 8);
    }

    #[test]
    fn convolution_matches_brute_force() {
        for k in 1..=4 {
            let table = rk_table(k, 60);
            for n in 0..=60 {
                assert_eq!(table[n], r_k_brute(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn jacobi_power_consistency() {
        // sum r_k(n) x^n = (sum x^{m^2})^k as exact integer coefficients
        let n_max = 500;
        for k in 1..=6 {
            let got = rk_table(k, n_max);
            // independent power route: repeated dense polynomial squaring/multiplication
            let theta = r1_table(n_max);
            let mut expect = vec![0u64; n_max + 1];
            expect[0] = 1;
            for _ in 0..k {
                let mut next = vec![0u64; n_max + 1];
                for i in 0..=n_max {
                    if expect[i] == 0 {
                        continue;
                    }
                    for (j, &t) in theta.iter().enumerate().take(n_max + 1 - i) {
                        next[i + j] += expect[i] * t;
                    }
                }
                expect = next;
            }
            assert_eq!(got, expect, "k={k}");
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_int(3, 6), 252); // 1 + 8 + 27 + 216
        assert_eq!(sigma_int(0, 12), 6); // divisor count
        assert_eq!(sigma_int(5, 1), 1);
        let z = Complex64::new(0.5, 1.3);
        assert!((sigma_complex(z, 1) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn tau_q_expansion() {
        assert_eq!(tau(1).unwrap(), 1);
        assert_eq!(tau(2).unwrap(), -24);
        assert_eq!(tau(3).unwrap(), 252);
        assert_eq!(tau(4).unwrap(), -1472);
        assert_eq!(tau(5).unwrap(), 4830);
    }

    #[test]
    fn tau_multiplicativity_oracle() {
        // external known theorem, used purely as a cross-check
        let t = tau_table(900);
        for m in 2..=30usize {
            for n in 2..=30usize {
                if gcd(m as u64, n as u64) == 1 {
                    assert_eq!(t[m * n], t[m] * t[n], "m={m} n={n}");
                }
            }
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn cache_determinism() {
        let seq = ArithmeticSequence::sum_of_squares(3);
        let before: Vec<_> = (1..=10).map(|n| seq.value(n).unwrap()).collect();
        // force a large extension, then re-read
        seq.value(2000).unwrap();
        let after: Vec<_> = (1..=10).map(|n| seq.value(n).unwrap()).collect();
        for (a, b) in before.iter().zip(&after) {
            assert_eq!(a.re.to_bits(), b.re.to_bits());
            assert_eq!(a.im.to_bits(), b.im.to_bits());
        }
    }

    #[test]
    fn horizon_overflow() {
        let seq = ArithmeticSequence::ramanujan_tau();
        assert!(matches!(
            seq.value(TAU_HORIZON + 1),
            Err(Error::HorizonOverflow { .. })
        ));
    }

    #[test]
    fn growth_bounds_hold_on_prefix() {
        let checks: Vec<(ArithmeticSequence, usize)> = vec![
            (ArithmeticSequence::sum_of_squares(4), 300),
            (ArithmeticSequence::divisor(Complex64::new(3.0, 0.0)), 300),
            (ArithmeticSequence::ramanujan_tau(), 200),
        ];
        for (seq, n_max) in checks {
            let (c, g) = seq.growth_bound();
            for n in 1..=n_max {
                let v = seq.value(n).unwrap().norm();
                assert!(v <= c * (n as f64).powf(g) * (1.0 + 1e-12), "{:?} n={n}", seq.kind());
            }
        }
    }
}
