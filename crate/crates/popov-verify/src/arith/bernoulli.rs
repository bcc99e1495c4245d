//! Bernoulli numbers, exact, by the defining recurrence.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// B_n (B_1 = -1/2 convention) as an exact rational.
pub fn bernoulli(n: usize) -> BigRational {
    bernoulli_list(n).pop().unwrap()
}

/// B_0..=B_n via sum_{j<=m} C(m+1, j) B_j = 0 for m >= 1.
pub fn bernoulli_list(n: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n + 1);
    b.push(BigRational::one());
    for m in 1..=n {
        // C(m+1, j) running product
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * bj;
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

pub fn bernoulli_f64(n: usize) -> f64 {
    let b = bernoulli(n);
    rational_to_f64(&b)
}

fn rational_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().expect("bernoulli out of f64 range")
}
