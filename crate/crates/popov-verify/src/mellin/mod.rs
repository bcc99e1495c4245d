//! Independent quadrature verification of the Mellin transform pairs and the
//! asymptotic estimates the identity proofs rest on: forward transforms
//! against closed Gamma.2F1 forms, truncated inverse line integrals against
//! the original kernels, and large-height ratio/majorant checks.

mod asymptotic;
mod forward;
mod inverse;
mod quad;

pub use asymptotic::{asymptotic_check_2f1, asymptotic_check_gamma2f1, AsymptoticCheckResult};
pub use forward::{forward_closed_form, jk_closed_form, mellin_forward_check, mellin_jk_check};
pub use inverse::{mellin_inverse_check, LineIntegralSpec};
