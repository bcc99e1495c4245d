//! The identity catalog: both sides of each transformation formula are
//! assembled from certified series evaluations plus closed-form boundary
//! terms, and compared up to the certified error.

mod analogue;
mod catalog;
mod guinand;
mod integral;
mod riesz;
mod theta;

pub use analogue::{
    involution_map, verify_analogue, verify_character, verify_cusp_tau, verify_divisor,
    verify_k4, verify_theta_involution,
};
pub use catalog::{catalog, run_identity, CatalogEntry, IdentityParams};
pub use guinand::{verify_guinand, verify_guinand_k1_chain, verify_psi_involution};
pub use integral::verify_popov_integral_k1;
pub use riesz::verify_riesz;
pub use theta::{verify_phi3, verify_popov, verify_popov_k1, verify_theta_k};

use num_complex::Complex64;

use crate::series::ValueWithBound;

/// Which Bessel kernel a two-variant identity uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    J,
    I,
}

/// Outcome of one identity evaluation. `pass` is recomputable from the other
/// fields: abs_residual <= tol + lhs.tail_bound + rhs.tail_bound.
#[derive(Debug, Clone, Copy)]
pub struct EvaluationReport {
    pub lhs: ValueWithBound,
    pub rhs: ValueWithBound,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub pass: bool,
}

pub(crate) fn make_report(lhs: ValueWithBound, rhs: ValueWithBound, tol: f64) -> EvaluationReport {
    let abs_residual = (lhs.value - rhs.value).norm();
    let scale = lhs.value.norm().max(rhs.value.norm()).max(f64::MIN_POSITIVE);
    EvaluationReport {
        lhs,
        rhs,
        abs_residual,
        rel_residual: abs_residual / scale,
        pass: abs_residual <= tol + lhs.tail_bound + rhs.tail_bound,
    }
}

/// a + f * v, with the bound scaled by |f|.
pub(crate) fn affine(a: Complex64, f: Complex64, v: ValueWithBound) -> ValueWithBound {
    ValueWithBound {
        value: a + f * v.value,
        tail_bound: f.norm() * v.tail_bound,
        terms_used: v.terms_used,
    }
}

/// Per-side series tolerance: a quarter of the residual budget, deflated by
/// the prefactor the series will be multiplied with.
pub(crate) fn side_tol(tol: f64, prefactor: f64) -> f64 {
    0.25 * tol / prefactor.abs().max(1.0)
}
