//! Exact arithmetic layer: coefficient sequences, characters, Bernoulli
//! numbers, and the Dirichlet series built from them.

mod bernoulli;
mod character;
mod sequences;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_f64, bernoulli_list};
pub use character::{legendre_symbol, DirichletCharacter};
pub use sequences::{
    r1_table, r_k, rk_table, sigma_complex, sigma_int, tau, tau_table, ArithmeticSequence,
    SequenceKind, DEFAULT_MAX_INDEX, TAU_HORIZON,
};
pub use zeta::{eta_k, eta_k_with, riemann_zeta, zeta_k, zeta_k_with, zeta_like, ZetaLikeSeries};
