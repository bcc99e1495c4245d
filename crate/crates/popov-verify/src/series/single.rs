//! Single Bessel-weighted series with a-priori certified truncation.
//!
//! A spec describes sum_{n>=1} a(n) n^p e^{-alpha lambda_n} F(beta g(lambda_n))
//! with lambda_n = n or n^2 and g the identity or the square root. The cutoff
//! is chosen from coefficient growth bounds and oscillator envelopes alone,
//! never from observed term sizes.

use num_complex::Complex64;

use crate::arith::ArithmeticSequence;
use crate::kahan::KahanComplexSum;
use crate::series::tails::bessel_k_envelope_const;
use crate::specfun::{bessel_i, bessel_j, bessel_k, gamma_raw, QuadratureControls, SpecialValue};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Default ceiling on the number of series terms.
pub const DEFAULT_MAX_TERMS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Oscillator {
    J(f64),
    I(f64),
    K(Complex64),
    Cos,
    Sin,
    Cosh,
    /// F(t) = e^{-t}; with scale 0 this is the plain theta-type series.
    Exp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMap {
    /// lambda_n = n
    Identity,
    /// lambda_n = n^2
    Squares,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgMap {
    /// oscillator argument beta * lambda_n
    Linear,
    /// oscillator argument beta * sqrt(lambda_n)
    Sqrt,
}

#[derive(Debug)]
pub struct BesselSeriesSpec {
    weights: ArithmeticSequence,
    power: Complex64,
    decay: f64,
    oscillator: Oscillator,
    scale: f64,
    index_map: IndexMap,
    arg_map: ArgMap,
    quad: QuadratureControls,
}

/// A certified partial evaluation: value, total certified error (truncation
/// tail + per-term evaluation bounds + rounding), and the cutoff used.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueWithBound {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms_used: usize,
}

impl ValueWithBound {
    pub fn exact(value: Complex64) -> Self {
        Self {
            value,
            tail_bound: 0.0,
            terms_used: 1,
        }
    }

    pub fn map(self, f: impl FnOnce(Complex64) -> Complex64, bound_factor: f64) -> Self {
        Self {
            value: f(self.value),
            tail_bound: self.tail_bound * bound_factor,
            terms_used: self.terms_used,
        }
    }
}

impl BesselSeriesSpec {
    pub fn new(
        weights: ArithmeticSequence,
        power: Complex64,
        decay: f64,
        oscillator: Oscillator,
        scale: f64,
        index_map: IndexMap,
        arg_map: ArgMap,
    ) -> Result<Self> {
        if !(decay > 0.0) {
            return Err(Error::InvalidSpec(format!("series decay {decay} <= 0")));
        }
        if !(scale >= 0.0) {
            return Err(Error::InvalidSpec(format!("series scale {scale} < 0")));
        }
        match oscillator {
            Oscillator::J(nu) | Oscillator::I(nu) => {
                if nu < -0.5 {
                    return Err(Error::InvalidSpec(format!(
                        "oscillator order {nu} below -1/2"
                    )));
                }
                if nu < 0.0 && scale == 0.0 {
                    return Err(Error::InvalidSpec(
                        "negative order with zero argument diverges".into(),
                    ));
                }
            }
            Oscillator::K(_) => {
                if scale <= 0.0 {
                    return Err(Error::InvalidSpec("K oscillator requires scale > 0".into()));
                }
            }
            _ => {}
        }
        // the x > y condition: e^{-alpha lambda} times an exponentially
        // growing oscillator only converges when alpha dominates
        let grows = matches!(oscillator, Oscillator::I(_) | Oscillator::Cosh);
        if grows && arg_map == ArgMap::Linear && decay <= scale {
            return Err(Error::InvalidSpec(format!(
                "growing oscillator requires decay > scale ({decay} <= {scale})"
            )));
        }
        Ok(Self {
            weights,
            power,
            decay,
            oscillator,
            scale,
            index_map,
            arg_map,
            quad: QuadratureControls::default(),
        })
    }

    pub fn weights(&self) -> &ArithmeticSequence {
        &self.weights
    }

    fn lambda(&self, n: usize) -> f64 {
        match self.index_map {
            IndexMap::Identity => n as f64,
            IndexMap::Squares => (n as f64) * (n as f64),
        }
    }

    fn argument(&self, n: usize) -> f64 {
        let l = self.lambda(n);
        match self.arg_map {
            ArgMap::Linear => self.scale * l,
            ArgMap::Sqrt => self.scale * l.sqrt(),
        }
    }

    /// Pointwise envelope |F(t)| <= c t^p e^{q t} for t > 0 (for K it is
    /// valid only for t >= 1, enforced by the cutoff search).
    fn envelope(&self) -> (f64, f64, f64) {
        match self.oscillator {
            Oscillator::J(nu) => {
                if nu >= 0.0 {
                    (1.0, 0.0, 0.0)
                } else {
                    // Poisson-integral bound (t/2)^nu / Gamma(nu+1)
                    let g = gamma_raw(Complex64::new(nu + 1.0, 0.0)).re;
                    (2f64.powf(-nu) / g, nu, 0.0)
                }
            }
            Oscillator::I(nu) => {
                let g = gamma_raw(Complex64::new(nu + 1.0, 0.0)).re;
                (2f64.powf(-nu) / g, nu, 1.0)
            }
            Oscillator::K(nu) => (bessel_k_envelope_const(nu.re), 0.0, -1.0),
            Oscillator::Cos | Oscillator::Sin => (1.0, 0.0, 0.0),
            Oscillator::Cosh => (1.0, 0.0, 1.0),
            Oscillator::Exp => (1.0, 0.0, -1.0),
        }
    }

    /// |F(0)| for zero-scale specs.
    fn osc_at_zero(&self) -> f64 {
        match self.oscillator {
            Oscillator::J(nu) | Oscillator::I(nu) => {
                if nu == 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Oscillator::Cos | Oscillator::Cosh | Oscillator::Exp => 1.0,
            Oscillator::Sin => 0.0,
            Oscillator::K(_) => f64::INFINITY,
        }
    }

    /// Upper bound for |term(n)|, valid pointwise.
    fn term_bound(&self, n: usize) -> f64 {
        let (cw, gw) = self.weights.growth_bound();
        let nf = n as f64;
        let l = self.lambda(n);
        let base = cw * nf.powf(gw + self.power.re) * (-self.decay * l).exp();
        let osc = if self.scale == 0.0 {
            self.osc_at_zero()
        } else {
            let (c, p, q) = self.envelope();
            let t = self.argument(n);
            c * t.powf(p) * (q * t).exp()
        };
        base * osc
    }

    /// Upper bound for term_bound(m+1)/term_bound(m) for every m >= n.
    fn ratio_bound(&self, n: usize) -> f64 {
        let (_, gw) = self.weights.growth_bound();
        let nf = n as f64;
        let growth = (gw + self.power.re).max(0.0);
        let (_, p, q) = self.envelope();
        // argument grows like n^dg
        let dg = match (self.index_map, self.arg_map) {
            (IndexMap::Identity, ArgMap::Linear) => 1.0,
            (IndexMap::Identity, ArgMap::Sqrt) => 0.5,
            (IndexMap::Squares, ArgMap::Linear) => 2.0,
            (IndexMap::Squares, ArgMap::Sqrt) => 1.0,
        };
        let mut poly = (1.0 + 1.0 / nf).powf(growth);
        if self.scale > 0.0 && p > 0.0 {
            poly *= (1.0 + 1.0 / nf).powf(p * dg);
        }
        let d_lambda = self.lambda(n + 1) - self.lambda(n); // min increment on the tail
        let mut log_factor = -self.decay * d_lambda;
        if self.scale > 0.0 && q > 0.0 {
            // I-type growth; sqrt increments are nonincreasing, linear
            // increments combine with the decay (decay > scale enforced)
            match self.arg_map {
                ArgMap::Linear => {
                    log_factor = (self.scale * q - self.decay) * d_lambda;
                }
                ArgMap::Sqrt => {
                    let d_sqrt = self.lambda(n + 1).sqrt() - self.lambda(n).sqrt();
                    log_factor += q * self.scale * d_sqrt;
                }
            }
        }
        poly * log_factor.exp()
    }

    /// Smallest cutoff whose certified tail is <= tol, with that tail.
    pub fn find_cutoff(&self, tol: f64, max_terms: usize) -> Result<(usize, f64)> {
        if tol <= 0.0 {
            return Err(Error::InvalidSpec(format!("tolerance {tol} <= 0")));
        }
        let needs_arg_ge_1 = matches!(self.oscillator, Oscillator::K(_));
        let mut last_tail = f64::INFINITY;
        for n in 1..=max_terms {
            if needs_arg_ge_1 && self.argument(n + 1) < 1.0 {
                continue;
            }
            let rho = self.ratio_bound(n + 1);
            if rho >= 1.0 {
                continue;
            }
            let tail = self.term_bound(n + 1) / (1.0 - rho);
            last_tail = tail;
            if tail <= tol {
                return Ok((n, tail));
            }
        }
        Err(Error::TolUnreachable {
            tol,
            ceiling: max_terms,
            tail: last_tail,
        })
    }

    fn eval_oscillator(&self, t: f64) -> Result<SpecialValue> {
        match self.oscillator {
            Oscillator::J(nu) => bessel_j(nu, t),
            Oscillator::I(nu) => bessel_i(nu, t),
            Oscillator::K(nu) => bessel_k(nu, t, &self.quad),
            Oscillator::Cos => Ok(SpecialValue::from_real(
                t.cos(),
                2.0 * EPS * (1.0 + t.abs()),
            )),
            Oscillator::Sin => Ok(SpecialValue::from_real(
                t.sin(),
                2.0 * EPS * (1.0 + t.abs()),
            )),
            Oscillator::Cosh => Ok(SpecialValue::from_real(
                t.cosh(),
                4.0 * EPS * (1.0 + t.abs()) * t.cosh(),
            )),
            Oscillator::Exp => Ok(SpecialValue::from_real((-t).exp(), 2.0 * EPS * (-t).exp())),
        }
    }

    /// Sum exactly n_cut terms; `tail` is the caller-certified truncation
    /// remainder to fold into the returned bound.
    pub fn eval_truncated(&self, n_cut: usize, tail: f64) -> Result<ValueWithBound> {
        let mut sum = KahanComplexSum::new();
        let mut eval_err = 0.0;
        let mut abs_sum = 0.0;
        for n in 1..=n_cut {
            let a = self.weights.value(n)?;
            if a.norm() == 0.0 {
                continue;
            }
            let l = self.lambda(n);
            let factor = a
                * Complex64::new(n as f64, 0.0).powc(self.power)
                * (-self.decay * l).exp();
            let t = self.argument(n);
            let f = self.eval_oscillator(t)?;
            let term = factor * f.value;
            sum.add(term);
            abs_sum += term.norm();
            eval_err += factor.norm() * f.abs_error_bound;
        }
        let round = 4.0 * EPS * abs_sum * (n_cut as f64).sqrt().max(1.0);
        Ok(ValueWithBound {
            value: sum.value(),
            tail_bound: tail + eval_err + round,
            terms_used: n_cut,
        })
    }

    pub fn eval(&self, tol: f64, max_terms: usize) -> Result<ValueWithBound> {
        let (n_cut, tail) = self.find_cutoff(tol, max_terms)?;
        self.eval_truncated(n_cut, tail)
    }
}

/// Convenience wrapper matching the catalog's dominant use.
pub fn eval_series(spec: &BesselSeriesSpec, tol: f64) -> Result<ValueWithBound> {
    spec.eval(tol, DEFAULT_MAX_TERMS)
}
