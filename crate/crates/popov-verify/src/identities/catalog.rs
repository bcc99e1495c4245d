//! Named catalog of every verifiable identity, with a uniform parameter
//! record so the CLI can dispatch by id.

use num_complex::Complex64;

use super::{
    verify_analogue, verify_character, verify_cusp_tau, verify_divisor, verify_guinand,
    verify_guinand_k1_chain, verify_k4, verify_phi3, verify_popov, verify_popov_integral_k1,
    verify_popov_k1, verify_psi_involution, verify_riesz, verify_theta_involution,
    verify_theta_k, EvaluationReport, Variant,
};
use crate::arith::{legendre_symbol, DirichletCharacter};
use crate::{Error, Result};

/// Uniform parameter record; each identity reads the fields it needs and
/// ignores the rest.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityParams {
    pub k: u32,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub nu: f64,
    pub q: f64,
    pub modulus: u64,
    pub tol: f64,
}

impl Default for IdentityParams {
    fn default() -> Self {
        IdentityParams {
            k: 2,
            x: 1.5,
            y: 0.5,
            z: 0.0,
            nu: 1.2,
            q: 1.0,
            modulus: 5,
            tol: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// Parameter names the identity actually consumes (besides tol).
    pub params: &'static [&'static str],
    /// Human-readable domain constraints.
    pub constraints: &'static str,
}

pub fn catalog() -> &'static [CatalogEntry] {
    &[
        CatalogEntry {
            id: "popov",
            params: &["k", "x", "z"],
            constraints: "k >= 1, x > 0, z >= 0 (z real)",
        },
        CatalogEntry {
            id: "popov_k1",
            params: &["x", "z"],
            constraints: "x > 0 (cosine/hyperbolic-cosine form)",
        },
        CatalogEntry {
            id: "theta_k",
            params: &["k", "x"],
            constraints: "k >= 1, x > 0",
        },
        CatalogEntry {
            id: "riesz_cn",
            params: &["k", "q", "x"],
            constraints: "x > 0, q > (k-1)/2; slow convergence, tol >= 1e-4 advised",
        },
        CatalogEntry {
            id: "phi3",
            params: &["k", "nu", "x", "z"],
            constraints: "x > 0, z >= 0, nu >= k/2 - 1 (certified majorant range)",
        },
        CatalogEntry {
            id: "analogue_j",
            params: &["k", "x", "y"],
            constraints: "k >= 1, x > y > 0",
        },
        CatalogEntry {
            id: "analogue_i",
            params: &["k", "x", "y"],
            constraints: "k >= 1, x > y > 0",
        },
        CatalogEntry {
            id: "theta_involution",
            params: &["k", "x", "y"],
            constraints: "k >= 1, x > y > 0",
        },
        CatalogEntry {
            id: "k4_exp",
            params: &["x", "y"],
            constraints: "x > y > 0",
        },
        CatalogEntry {
            id: "divisor_j",
            params: &["k", "x", "y"],
            constraints: "k odd >= 3, x > y > 0",
        },
        CatalogEntry {
            id: "divisor_i",
            params: &["k", "x", "y"],
            constraints: "k odd >= 3, x > y > 0",
        },
        CatalogEntry {
            id: "cusp_tau_j",
            params: &["x", "y"],
            constraints: "x > y > 0",
        },
        CatalogEntry {
            id: "cusp_tau_i",
            params: &["x", "y"],
            constraints: "x > y > 0",
        },
        CatalogEntry {
            id: "char_even",
            params: &["modulus", "x", "y"],
            constraints: "modulus 4 or odd prime with an even quadratic character, x > y > 0",
        },
        CatalogEntry {
            id: "char_odd",
            params: &["modulus", "x", "y"],
            constraints: "modulus 4 or odd prime with an odd quadratic character, x > y > 0",
        },
        CatalogEntry {
            id: "guinand_j",
            params: &["k", "nu", "x", "y"],
            constraints: "x, y > 0, Re(nu) > k/2",
        },
        CatalogEntry {
            id: "guinand_i",
            params: &["k", "nu", "x", "y"],
            constraints: "x > y > 0, Re(nu) > k/2",
        },
        CatalogEntry {
            id: "guinand_k1",
            params: &["nu", "x", "y"],
            constraints: "x > 0, y >= 0, nu not 1 or an even integer (incl. 0)",
        },
        CatalogEntry {
            id: "psi_involution",
            params: &["k", "nu", "x", "y"],
            constraints: "x, y > 0, Re(nu) > k/2",
        },
        CatalogEntry {
            id: "popov_integral_k1",
            params: &["x", "z"],
            constraints: "x > 0; quadrature-limited, tol >= 1e-6 advised",
        },
    ]
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

/// Primitive quadratic character of the requested parity for the supported
/// moduli: 4 (odd) and odd primes (parity fixed by p mod 4).
fn quadratic_character(modulus: u64, want_even: bool) -> Result<DirichletCharacter> {
    if modulus == 4 {
        if want_even {
            return Err(Error::InvalidSpec(
                "the primitive character mod 4 is odd".into(),
            ));
        }
        return DirichletCharacter::from_values(
            4,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(-1.0, 0.0),
            ],
        );
    }
    if !is_prime(modulus) || modulus == 2 {
        return Err(Error::InvalidSpec(format!(
            "modulus {modulus} not supported: use 4 or an odd prime"
        )));
    }
    let chi = DirichletCharacter::legendre(modulus)?;
    let even = modulus % 4 == 1;
    if even != want_even {
        return Err(Error::InvalidSpec(format!(
            "the quadratic character mod {modulus} is {} (p = {} mod 4)",
            if even { "even" } else { "odd" },
            modulus % 4
        )));
    }
    debug_assert_eq!(legendre_symbol(modulus - 1, modulus) == 1, want_even);
    Ok(chi)
}

pub fn run_identity(id: &str, p: &IdentityParams) -> Result<EvaluationReport> {
    let nu = Complex64::new(p.nu, 0.0);
    match id {
        "popov" => verify_popov(p.k, p.x, p.z, p.tol),
        "popov_k1" => verify_popov_k1(p.x, p.z, p.tol),
        "theta_k" => verify_theta_k(p.k, p.x, p.tol),
        "riesz_cn" => verify_riesz(p.k, p.q, p.x, p.tol),
        "phi3" => verify_phi3(p.k, p.nu, p.x, p.z, p.tol),
        "analogue_j" => verify_analogue(p.k, p.x, p.y, Variant::J, p.tol),
        "analogue_i" => verify_analogue(p.k, p.x, p.y, Variant::I, p.tol),
        "theta_involution" => verify_theta_involution(p.k, p.x, p.y, p.tol),
        "k4_exp" => verify_k4(p.x, p.y, p.tol),
        "divisor_j" => verify_divisor(p.k, p.x, p.y, Variant::J, p.tol),
        "divisor_i" => verify_divisor(p.k, p.x, p.y, Variant::I, p.tol),
        "cusp_tau_j" => verify_cusp_tau(p.x, p.y, Variant::J, p.tol),
        "cusp_tau_i" => verify_cusp_tau(p.x, p.y, Variant::I, p.tol),
        "char_even" => verify_character(&quadratic_character(p.modulus, true)?, p.x, p.y, p.tol),
        "char_odd" => verify_character(&quadratic_character(p.modulus, false)?, p.x, p.y, p.tol),
        "guinand_j" => verify_guinand(p.k, nu, p.x, p.y, Variant::J, p.tol),
        "guinand_i" => verify_guinand(p.k, nu, p.x, p.y, Variant::I, p.tol),
        "guinand_k1" => verify_guinand_k1_chain(nu, p.x, p.y, p.tol),
        "psi_involution" => verify_psi_involution(p.k, nu, p.x, p.y, p.tol),
        "popov_integral_k1" => verify_popov_integral_k1(p.x, p.z, p.tol),
        _ => Err(Error::InvalidSpec(format!("unknown identity id {id:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_has_twenty_unique_ids() {
        let c = catalog();
        assert_eq!(c.len(), 20);
        let mut ids: Vec<_> = c.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), 20);
    }

    #[test]
    fn dispatch_runs_a_known_id() {
        let p = IdentityParams {
            k: 2,
            x: 2.0,
            y: 1.0,
            ..Default::default()
        };
        let rep = run_identity("analogue_j", &p).unwrap();
        assert!(rep.pass);
    }

    #[test]
    fn unknown_id_rejected() {
        assert!(matches!(
            run_identity("nope", &IdentityParams::default()),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn character_modulus_parity_enforced() {
        assert!(quadratic_character(5, true).is_ok());
        assert!(quadratic_character(5, false).is_err());
        assert!(quadratic_character(4, false).is_ok());
        assert!(quadratic_character(4, true).is_err());
        assert!(quadratic_character(6, true).is_err());
    }
}
