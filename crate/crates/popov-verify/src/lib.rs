//! Numerical verification of Bessel-series summation formulas attached to the
//! sum-of-squares function `r_k(n)` and related Hecke Dirichlet series.
//!
//! The crate is organised in five layers:
//!
//! - [`arith`] — exact arithmetic sequences (`r_k`, `σ_z`, `τ`, Dirichlet
//!   characters) and zeta-type Dirichlet series with certified tails,
//! - [`specfun`] — special-function kernels (Γ, Bessel J/I/K, ₂F₁, ₁F₁,
//!   Humbert Φ₃), each returning a value together with an absolute error bound,
//! - [`series`] — the certified series engine: exponentially damped Bessel
//!   series, double series over products `mn`, and Riesz sums,
//! - [`identities`] — the identity catalog: both sides of each transformation
//!   formula assembled from series plus closed-form boundary terms,
//! - [`mellin`] — independent quadrature checks of the Mellin pairs and
//!   asymptotic lemmas the identities rest on.
//!
//! Every evaluator reports a rigorous truncation bound; an identity "passes"
//! only when the signed residual is below the requested tolerance plus the
//! certified tails of both sides.
//!
//! ```
//! use popov_verify::identities::{verify_theta_k, verify_analogue, Variant};
//!
//! let rep = verify_theta_k(2, 3.0, 1e-12).unwrap();
//! assert!(rep.pass);
//!
//! let rep = verify_analogue(2, 2.0, 1.0, Variant::J, 1e-10).unwrap();
//! assert!(rep.abs_residual <= 1e-10 + rep.lhs.tail_bound + rep.rhs.tail_bound);
//! ```

pub mod arith;
pub mod cli;
pub mod error;
pub mod identities;
pub mod kahan;
pub mod mellin;
pub mod series;
pub mod specfun;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
