//! Dirichlet characters as explicit value tables, plus Gauss sums.

use num_complex::Complex64;

use crate::{Error, Result};

/// A Dirichlet character mod q, stored as its values on residues 0..q-1.
#[derive(Debug, Clone)]
pub struct DirichletCharacter {
    modulus: u64,
    values: Vec<Complex64>,
}

impl DirichletCharacter {
    /// Build from a value table indexed by residue. The table must vanish
    /// exactly on residues sharing a factor with q, take roots of unity
    /// elsewhere, and be completely multiplicative.
    pub fn from_values(modulus: u64, values: Vec<Complex64>) -> Result<Self> {
        if modulus == 0 || values.len() != modulus as usize {
            return Err(Error::InvalidSpec(format!(
                "character table length {} != modulus {modulus}",
                values.len()
            )));
        }
        let chi = Self { modulus, values };
        for a in 0..modulus {
            let va = chi.values[a as usize];
            if gcd(a, modulus) != 1 {
                if va != Complex64::new(0.0, 0.0) {
                    return Err(Error::InvalidSpec(format!(
                        "chi({a}) must vanish (gcd({a}, {modulus}) > 1)"
                    )));
                }
                continue;
            }
            if (va.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidSpec(format!("|chi({a})| != 1")));
            }
            for b in a..modulus {
                if gcd(b, modulus) != 1 {
                    continue;
                }
                let prod = chi.values[((a * b) % modulus) as usize];
                if (va * chi.values[b as usize] - prod).norm() > 1e-12 {
                    return Err(Error::InvalidSpec(format!(
                        "character not multiplicative at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(chi)
    }

    /// Legendre-symbol character mod an odd prime p (real, primitive).
    pub fn legendre(p: u64) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidSpec(format!("legendre: {p} not an odd prime")));
        }
        let values = (0..p)
            .map(|a| Complex64::new(legendre_symbol(a, p) as f64, 0.0))
            .collect();
        Self::from_values(p, values)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn eval(&self, n: u64) -> Complex64 {
        self.values[(n % self.modulus) as usize]
    }

    /// chi(-1) = 1
    pub fn is_even(&self) -> bool {
        (self.eval(self.modulus - 1) - Complex64::new(1.0, 0.0)).norm() < 1e-9
    }

    /// chi(n) = 1 for every n coprime to q
    pub fn is_principal(&self) -> bool {
        (0..self.modulus)
            .filter(|&n| gcd(n, self.modulus) == 1)
            .all(|n| (self.values[n as usize] - Complex64::new(1.0, 0.0)).norm() < 1e-9)
    }

    /// Smallest d | q with chi(n) = 1 whenever n = 1 mod d and gcd(n, q) = 1.
    pub fn conductor(&self) -> u64 {
        let q = self.modulus;
        (1..=q)
            .filter(|d| q % d == 0)
            .find(|&d| {
                (0..q)
                    .filter(|&n| n % d == 1 % d && gcd(n, q) == 1)
                    .all(|n| (self.values[n as usize] - Complex64::new(1.0, 0.0)).norm() < 1e-9)
            })
            .unwrap_or(q)
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor() == self.modulus
    }

    pub fn conjugate(&self) -> Self {
        Self {
            modulus: self.modulus,
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Gauss sum G(chi) = sum_{n mod q} chi(n) e^{2 pi i n / q}.
    pub fn gauss_sum(&self) -> Result<Complex64> {
        if self.is_principal() {
            return Err(Error::InvalidSpec("gauss_sum: principal character".into()));
        }
        let q = self.modulus as f64;
        let mut sum = crate::kahan::KahanComplexSum::new();
        for n in 0..self.modulus {
            let theta = 2.0 * std::f64::consts::PI * n as f64 / q;
            sum.add(self.values[n as usize] * Complex64::new(theta.cos(), theta.sin()));
        }
        Ok(sum.value())
    }
}

/// Legendre symbol (a|p) in {-1, 0, 1} by Euler's criterion.
pub fn legendre_symbol(a: u64, p: u64) -> i32 {
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = pow_mod(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        -1
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut r: u128 = 1;
    let mut base = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    r as u64
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
