//! Certified evaluation of the Bessel-weighted single and double series:
//! a-priori truncation points derived from coefficient growth bounds and
//! oscillator envelopes, with the resulting tail carried in the output.

mod double;
mod riesz;
mod single;
pub mod tails;

pub use double::{
    eval_double_series, DoubleSeriesSpec, InnerOscillator, DEFAULT_MAX_PRODUCT,
};
pub use riesz::riesz_sum;

use std::sync::atomic::{AtomicUsize, Ordering};

static MAX_TERMS_OVERRIDE: AtomicUsize = AtomicUsize::new(0);

/// Process-wide truncation ceiling: explicit override, then the
/// POPOV_VERIFY_MAX_TERMS environment variable, then the default.
pub fn max_terms_limit() -> usize {
    let set = MAX_TERMS_OVERRIDE.load(Ordering::Relaxed);
    if set != 0 {
        return set;
    }
    if let Ok(s) = std::env::var("POPOV_VERIFY_MAX_TERMS") {
        if let Ok(n) = s.trim().parse::<usize>() {
            if n > 0 {
                return n;
            }
        }
    }
    single::DEFAULT_MAX_TERMS
}

/// 0 restores the default/environment behaviour.
pub fn set_max_terms_limit(n: usize) {
    MAX_TERMS_OVERRIDE.store(n, Ordering::Relaxed);
}
pub use single::{
    eval_series, ArgMap, BesselSeriesSpec, IndexMap, Oscillator, ValueWithBound,
    DEFAULT_MAX_TERMS,
};
