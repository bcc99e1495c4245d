//! Special-function kernels. Every evaluator returns a [`SpecialValue`]:
//! the computed complex value plus a certified absolute error bound.

mod bessel;
mod gamma;
mod hyper;
mod value;

pub use bessel::{bessel_i, bessel_i_arg, bessel_j, bessel_j_arg, bessel_k};
pub use gamma::{gamma, gamma_raw, ln_gamma};
pub use hyper::{gauss_series, humbert_phi3, hyp1f1, hyp2f1, hyp2f1_euler, hyp2f1_pfaff};
pub use value::{QuadratureControls, SpecialValue};
