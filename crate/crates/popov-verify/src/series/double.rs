//! Double series sum_{m,n} a(m) b(n) (m/n)^rho (mn)^p F(s_in sqrt(mn)) K_nu(s_out sqrt(mn)),
//! evaluated hyperbola-by-hyperbola: terms are grouped by the product P = mn,
//! whose divisor pairs share one oscillator evaluation.

use num_complex::Complex64;

use crate::arith::ArithmeticSequence;
use crate::kahan::KahanComplexSum;
use crate::series::single::ValueWithBound;
use crate::series::tails::{bessel_k_envelope_const, power_exp_sqrt_tail};
use crate::specfun::{bessel_i, bessel_j, bessel_k, gamma_raw, QuadratureControls};
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;

/// Default ceiling on the product cutoff M.
pub const DEFAULT_MAX_PRODUCT: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerOscillator {
    J,
    I,
}

#[derive(Debug)]
pub struct DoubleSeriesSpec {
    weights_m: ArithmeticSequence,
    weights_n: ArithmeticSequence,
    /// exponent of m/n
    ratio_power: Complex64,
    /// exponent of mn
    joint_power: Complex64,
    inner: InnerOscillator,
    inner_order: f64,
    /// inner argument is inner_scale * sqrt(mn)
    inner_scale: f64,
    outer_order: Complex64,
    /// outer K argument is outer_scale * sqrt(mn)
    outer_scale: f64,
    quad: QuadratureControls,
}

impl DoubleSeriesSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        weights_m: ArithmeticSequence,
        weights_n: ArithmeticSequence,
        ratio_power: Complex64,
        joint_power: Complex64,
        inner: InnerOscillator,
        inner_order: f64,
        inner_scale: f64,
        outer_order: Complex64,
        outer_scale: f64,
    ) -> Result<Self> {
        if inner_order < -0.5 {
            return Err(Error::InvalidSpec(format!(
                "inner order {inner_order} below -1/2"
            )));
        }
        if !(inner_scale >= 0.0) || !(outer_scale > 0.0) {
            return Err(Error::InvalidSpec(
                "double series requires inner scale >= 0 and outer scale > 0".into(),
            ));
        }
        // the I variant needs the K decay to dominate (the x > y condition)
        if inner == InnerOscillator::I && outer_scale <= inner_scale {
            return Err(Error::InvalidSpec(format!(
                "I-type double series requires outer scale > inner scale ({outer_scale} <= {inner_scale})"
            )));
        }
        if inner_order < 0.0 && inner_scale == 0.0 {
            return Err(Error::InvalidSpec(
                "negative inner order with zero argument diverges".into(),
            ));
        }
        Ok(Self {
            weights_m,
            weights_n,
            ratio_power,
            joint_power,
            inner,
            inner_order,
            inner_scale,
            outer_order,
            outer_scale,
            quad: QuadratureControls::default(),
        })
    }

    /// sum over mn = p of a(m) b(n) (m/n)^rho — one hyperbola's coefficient.
    pub fn combined_coefficient(&self, p: usize) -> Result<Complex64> {
        let mut acc = KahanComplexSum::new();
        for m in 1..=p {
            if p % m != 0 {
                continue;
            }
            let n = p / m;
            let a = self.weights_m.value(m)?;
            if a.norm() == 0.0 {
                continue;
            }
            let b = self.weights_n.value(n)?;
            if b.norm() == 0.0 {
                continue;
            }
            let ratio = Complex64::new(m as f64 / n as f64, 0.0).powc(self.ratio_power);
            acc.add(a * b * ratio);
        }
        Ok(acc.value())
    }

    /// (c, a, q_in) with the per-hyperbola bound
    /// |group(P)| <= c P^a e^{q_in sqrt(P)} e^{-outer_scale sqrt(P)},
    /// valid once outer_scale sqrt(P) >= 1.
    fn group_envelope(&self) -> (f64, f64, f64) {
        let (ca, ga) = self.weights_m.growth_bound();
        let (cb, gb) = self.weights_n.growth_bound();
        // d(P) <= 2 sqrt(P) divisor pairs; m^ga n^gb <= P^{ga+ + gb+};
        // |(m/n)^rho| <= P^{|Re rho|} since 1/P <= m/n <= P
        let mut c = 2.0 * ca * cb;
        let mut a = 0.5
            + ga.max(0.0)
            + gb.max(0.0)
            + self.ratio_power.re.abs()
            + self.joint_power.re;
        let mut q_in = 0.0;
        let g = gamma_raw(Complex64::new(self.inner_order + 1.0, 0.0)).re;
        match self.inner {
            InnerOscillator::J => {
                if self.inner_order < 0.0 {
                    // Poisson bound (t/2)^ord / Gamma(ord+1), t = s_in sqrt(P)
                    c *= (self.inner_scale / 2.0).powf(self.inner_order) / g;
                    a += self.inner_order / 2.0;
                }
                // order >= 0: |J| <= 1
            }
            InnerOscillator::I => {
                if self.inner_scale > 0.0 {
                    c *= (self.inner_scale / 2.0).powf(self.inner_order) / g;
                    a += self.inner_order / 2.0;
                    q_in = self.inner_scale;
                } else if self.inner_order > 0.0 {
                    c = 0.0; // I_ord(0) = 0 kills every term
                }
            }
        }
        c *= bessel_k_envelope_const(self.outer_order.re);
        (c, a, q_in)
    }

    /// Smallest product cutoff M with certified tail <= tol.
    pub fn find_cutoff(&self, tol: f64, max_product: usize) -> Result<(usize, f64)> {
        if tol <= 0.0 {
            return Err(Error::InvalidSpec(format!("tolerance {tol} <= 0")));
        }
        let (c, a, q_in) = self.group_envelope();
        if c == 0.0 {
            return Ok((1, 0.0));
        }
        let c_eff = self.outer_scale - q_in;
        debug_assert!(c_eff > 0.0);
        let mut last_tail = f64::INFINITY;
        for m_cut in 1..=max_product {
            // K envelope needs argument >= 1 on the whole tail
            if self.outer_scale * ((m_cut + 1) as f64).sqrt() < 1.0 {
                continue;
            }
            match power_exp_sqrt_tail(a, c_eff, m_cut as f64) {
                Some(t) => {
                    let tail = c * t;
                    last_tail = tail;
                    if tail <= tol {
                        return Ok((m_cut, tail));
                    }
                }
                None => continue,
            }
        }
        Err(Error::TolUnreachable {
            tol,
            ceiling: max_product,
            tail: last_tail,
        })
    }

    /// Sum all hyperbolas with product <= m_cut.
    pub fn eval_truncated(&self, m_cut: usize, tail: f64) -> Result<ValueWithBound> {
        let mut sum = KahanComplexSum::new();
        let mut eval_err = 0.0;
        let mut abs_sum = 0.0;
        let mut groups = 0usize;
        for p in 1..=m_cut {
            let coeff = self.combined_coefficient(p)?;
            if coeff.norm() == 0.0 {
                continue;
            }
            groups += 1;
            let root = (p as f64).sqrt();
            let joint = Complex64::new(p as f64, 0.0).powc(self.joint_power);
            let inner = match self.inner {
                InnerOscillator::J => bessel_j(self.inner_order, self.inner_scale * root)?,
                InnerOscillator::I => bessel_i(self.inner_order, self.inner_scale * root)?,
            };
            let outer = bessel_k(self.outer_order, self.outer_scale * root, &self.quad)?;
            let factor = coeff * joint;
            let term = factor * inner.value * outer.value;
            sum.add(term);
            abs_sum += term.norm();
            eval_err += factor.norm()
                * (inner.value.norm() * outer.abs_error_bound
                    + outer.value.norm() * inner.abs_error_bound
                    + inner.abs_error_bound * outer.abs_error_bound);
        }
        let round = 4.0 * EPS * abs_sum * (m_cut as f64).sqrt().max(1.0);
        Ok(ValueWithBound {
            value: sum.value(),
            tail_bound: tail + eval_err + round,
            terms_used: groups.max(1),
        })
    }

    pub fn eval(&self, tol: f64, max_product: usize) -> Result<ValueWithBound> {
        let (m_cut, tail) = self.find_cutoff(tol, max_product)?;
        self.eval_truncated(m_cut, tail)
    }
}

pub fn eval_double_series(spec: &DoubleSeriesSpec, tol: f64) -> Result<ValueWithBound> {
    spec.eval(tol, DEFAULT_MAX_PRODUCT)
}
