//! Acceptance gate: one criterion per test, one printed pass/fail line each
//! (visible with `--nocapture`; a failed criterion also fails the test).

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use std::f64::consts::PI;

use popov_verify::arith::{
    bernoulli, r_k, sigma_int, tau, ArithmeticSequence, SequenceKind,
};
use popov_verify::identities::{
    run_identity, verify_analogue, verify_phi3, verify_popov, verify_theta_k, IdentityParams,
    Variant,
};
use popov_verify::mellin::{
    asymptotic_check_2f1, asymptotic_check_gamma2f1, mellin_forward_check, mellin_inverse_check,
};
use popov_verify::series::{ArgMap, BesselSeriesSpec, IndexMap, Oscillator, DEFAULT_MAX_TERMS};
use popov_verify::specfun::{bessel_i, bessel_j, bessel_k, hyp2f1, QuadratureControls};

fn criterion(name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let outcome = std::panic::catch_unwind(body);
    match &outcome {
        Ok(()) => println!("{name}: pass"),
        Err(_) => println!("{name}: fail"),
    }
    if let Err(e) = outcome {
        std::panic::resume_unwind(e);
    }
}

fn c_re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn gamma_f64(x: f64) -> f64 {
    popov_verify::specfun::gamma_raw(c_re(x)).re
}

#[test]
fn criterion_1_arithmetic_oracles() {
    criterion("criterion 1 (arithmetic oracles)", || {
        // r_k against lattice-point counting
        let bound = 14i64; // 14^2 = 196 covers n <= 200 in one coordinate
        let mut r1 = [0u64; 201];
        for a in -bound..=bound {
            let s = (a * a) as usize;
            if s <= 200 {
                r1[s] += 1;
            }
        }
        let mut r2 = [0u64; 201];
        let mut r3 = [0u64; 201];
        let mut r4 = [0u64; 201];
        for a in -bound..=bound {
            for b in -bound..=bound {
                let s2 = (a * a + b * b) as usize;
                if s2 > 200 {
                    continue;
                }
                r2[s2] += 1;
                for c in -bound..=bound {
                    let s3 = s2 + (c * c) as usize;
                    if s3 > 200 {
                        continue;
                    }
                    r3[s3] += 1;
                    for d in -bound..=bound {
                        let s4 = s3 + (d * d) as usize;
                        if s4 <= 200 {
                            r4[s4] += 1;
                        }
                    }
                }
            }
        }
        for n in 1..=200usize {
            assert_eq!(r_k(1, n).unwrap(), r1[n], "r_1({n})");
            assert_eq!(r_k(2, n).unwrap(), r2[n], "r_2({n})");
            assert_eq!(r_k(3, n).unwrap(), r3[n], "r_3({n})");
            assert_eq!(r_k(4, n).unwrap(), r4[n], "r_4({n})");
        }

        // tau against the q-expansion of q prod (1 - q^m)^24 up to n = 50
        let n_max = 50usize;
        let mut poly = vec![0i128; n_max + 1];
        poly[0] = 1;
        for m in 1..=n_max {
            for _ in 0..24 {
                for i in (m..=n_max).rev() {
                    poly[i] -= poly[i - m];
                }
            }
        }
        for n in 1..=n_max {
            assert_eq!(tau(n).unwrap(), poly[n - 1], "tau({n})");
        }
        assert_eq!(tau(2).unwrap(), -24);
        assert_eq!(tau(3).unwrap(), 252);
        assert_eq!(sigma_int(3, 6), 252);
        assert_eq!(bernoulli(4).to_string(), "-1/30");
    });
}

#[test]
fn criterion_2_special_function_oracles() {
    criterion("criterion 2 (special-function oracles)", || {
        let ctl = QuadratureControls::default();
        for t in [0.5, 1.0, 3.0, 10.0] {
            let j = bessel_j(-0.5, t).unwrap().value.re;
            assert!(
                (j - (2.0 / (PI * t)).sqrt() * t.cos()).abs() <= 1e-11,
                "J_-1/2({t})"
            );
            let i = bessel_i(-0.5, t).unwrap().value.re;
            assert!(
                (i - (2.0 / (PI * t)).sqrt() * t.cosh()).abs() <= 1e-11 * t.cosh(),
                "I_-1/2({t})"
            );
            let k = bessel_k(c_re(0.5), t, &ctl).unwrap().value.re;
            assert!(
                (k - (PI / (2.0 * t)).sqrt() * (-t).exp()).abs() <= 1e-11,
                "K_1/2({t})"
            );
        }
        // 2F1(a, b; b; z) = (1 - z)^{-a}
        for (a, b, z) in [(0.7, 1.3, 0.4), (1.5, 0.5, -0.6), (2.2, 2.2, 0.25)] {
            let f = hyp2f1(c_re(a), c_re(b), c_re(b), -z * z / 4.0).unwrap().value;
            let exact = (1.0 + z * z / 4.0).powf(-a);
            assert!((f.re - exact).abs() <= 1e-12, "binomial case a={a}");
        }
        for (a, b, z) in [(0.7, 1.3, 0.4), (1.5, 0.5, -0.6)] {
            let f = hyp2f1(c_re(a), c_re(b), c_re(b), z).unwrap().value.re;
            assert!((f - (1.0 - z).powf(-a)).abs() <= 1e-12);
        }
        // Pfaff and Euler transformations on 100 random parameter triples
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for trial in 0..100 {
            let a = c_re(rng.gen_range(-1.5..2.5));
            let b = c_re(rng.gen_range(-1.5..2.5));
            let cc = c_re(rng.gen_range(0.5..3.5));
            let z = rng.gen_range(-0.7..0.45);
            let direct = hyp2f1(a, b, cc, z).unwrap();
            let pfaff = popov_verify::specfun::hyp2f1_pfaff(a, b, cc, z).unwrap();
            let euler = popov_verify::specfun::hyp2f1_euler(a, b, cc, z).unwrap();
            let scale = direct.value.norm().max(1.0);
            let budget = (direct.abs_error_bound + pfaff.abs_error_bound).max(1e-11 * scale);
            assert!(
                (direct.value - pfaff.value).norm() <= budget,
                "trial {trial}: pfaff"
            );
            let budget = (direct.abs_error_bound + euler.abs_error_bound).max(1e-11 * scale);
            assert!(
                (direct.value - euler.value).norm() <= budget,
                "trial {trial}: euler"
            );
        }
    });
}

#[test]
fn criterion_3_transformation_grid() {
    criterion("criterion 3 (transformation grid)", || {
        let mut cases = 0usize;
        for k in 1..=5u32 {
            for x in [0.7, 1.0, 1.5, 2.0] {
                for y in [0.1, x / 3.0, 0.9 * x] {
                    assert!(y < x);
                    for variant in [Variant::J, Variant::I] {
                        let rep = verify_analogue(k, x, y, variant, 1e-9).unwrap();
                        assert!(
                            rep.pass,
                            "k={k} x={x} y={y} {variant:?}: residual {}",
                            rep.abs_residual
                        );
                        cases += 1;
                    }
                }
            }
        }
        assert_eq!(cases, 120);
        // self-dual points x^2 +/- y^2 = 1
        let rep = verify_analogue(2, 0.8, 0.6, Variant::J, 1e-9).unwrap();
        assert!(rep.abs_residual <= 1e-13, "J self-dual: {}", rep.abs_residual);
        let rep = verify_analogue(2, 1.25, 0.75, Variant::I, 1e-9).unwrap();
        assert!(rep.abs_residual <= 1e-13, "I self-dual: {}", rep.abs_residual);
    });
}

#[test]
fn criterion_4_degeneration_ladder() {
    criterion("criterion 4 (degeneration ladder)", || {
        // y -> 0: both sides of the J transformation approach the theta
        // relation after dividing out the kernel limit (pi y / 2)^nu / Gamma(nu+1)
        for k in [1u32, 2, 3] {
            let y = 1e-6;
            let nu = k as f64 / 4.0 - 0.5;
            let f = (PI * y / 2.0).powf(nu) / gamma_f64(nu + 1.0);
            let a = verify_analogue(k, 1.5, y, Variant::J, 1e-9).unwrap();
            let t = verify_theta_k(k, 1.5, 1e-12).unwrap();
            assert!((a.lhs.value / f - t.lhs.value).norm() <= 1e-4, "k={k} lhs");
            assert!((a.rhs.value / f - t.rhs.value).norm() <= 1e-4, "k={k} rhs");
        }
        // nu = k/2 - 1 collapses the Humbert form onto the Gaussian-weight form
        for (k, z) in [(2u32, 0.7), (3, 0.4), (4, 1.1)] {
            let p = verify_phi3(k, k as f64 / 2.0 - 1.0, 1.5, z, 1e-9).unwrap();
            let q = verify_popov(k, 1.5, z, 1e-9).unwrap();
            assert!((p.lhs.value - q.lhs.value).norm() <= 1e-9, "k={k} lhs");
            assert!((p.rhs.value - q.rhs.value).norm() <= 1e-9, "k={k} rhs");
        }
        // z = 0 is the theta relation up to the shared factor x^{k/4}
        for (k, x) in [(1u32, 1.5), (2, 0.8), (4, 2.0)] {
            let p = verify_popov(k, x, 0.0, 1e-12).unwrap();
            let t = verify_theta_k(k, x, 1e-13).unwrap();
            let f = x.powf(k as f64 / 4.0);
            assert!((p.lhs.value - f * t.lhs.value).norm() <= 1e-12, "k={k} lhs");
            assert!((p.rhs.value - f * t.rhs.value).norm() <= 1e-12, "k={k} rhs");
        }
    });
}

#[test]
fn criterion_5_catalog_breadth() {
    criterion("criterion 5 (catalog breadth)", || {
        let d = IdentityParams::default();
        let cases: Vec<(&str, IdentityParams)> = vec![
            ("k4_exp", d.clone()),
            ("divisor_j", IdentityParams { k: 3, ..d.clone() }),
            ("cusp_tau_j", d.clone()),
            ("char_even", IdentityParams { modulus: 5, ..d.clone() }),
            ("char_odd", IdentityParams { modulus: 4, ..d.clone() }),
            (
                "riesz_cn",
                IdentityParams { k: 1, tol: 1e-4, ..d.clone() },
            ),
            ("popov_integral_k1", IdentityParams { tol: 1e-6, ..d.clone() }),
            (
                "guinand_j",
                IdentityParams { k: 1, nu: 1.2, ..d.clone() },
            ),
            ("guinand_k1", d.clone()),
            (
                "psi_involution",
                IdentityParams { x: 1.2, y: 0.3, nu: 1.5, ..d.clone() },
            ),
        ];
        for (id, p) in cases {
            let rep = run_identity(id, &p).unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(rep.pass, "{id}: residual {}", rep.abs_residual);
        }
    });
}

#[test]
fn criterion_6_mellin_suite() {
    criterion("criterion 6 (mellin suite)", || {
        // forward pairs against closed forms
        for (s, k) in [
            (c_re(2.0), 2u32),
            (Complex64::new(1.5, 0.5), 3),
            (c_re(1.2), 1),
        ] {
            let rep = mellin_forward_check(s, 2.0, 1.0, k, 1e-6).unwrap();
            assert!(rep.pass && rep.abs_residual <= 1e-6, "forward s={s} k={k}");
        }
        // truncated inverse round trip at three points
        for x in [0.5, 1.0, 2.0] {
            let rep = mellin_inverse_check(x, 1.5 * PI, 0.5 * PI, 2, 1.0, 40.0, 1e-6).unwrap();
            assert!(rep.pass && rep.abs_residual <= 1e-6, "inverse x={x}");
        }
        // deviation * t stays inside a factor-4 band across the heights
        let r = asymptotic_check_2f1(1.0, 0.0, 1.0, 0.3, &[50.0, 100.0, 200.0]).unwrap();
        let lo = r.deviations.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = r.deviations.iter().cloned().fold(0.0f64, f64::max);
        assert!(hi <= 4.0 * lo, "band [{lo}, {hi}]");
        // the majorant threshold scan lands at tau0 <= 30
        let scan = asymptotic_check_gamma2f1(1.5, 0.0, c_re(0.5), 0.4, 30.0).unwrap();
        assert!(scan.tau0.unwrap() <= 30.0, "tau0 {:?}", scan.tau0);
    });
}

#[test]
fn criterion_7_truncation_soundness() {
    criterion("criterion 7 (truncation soundness)", || {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2026);
        let mut accepted = 0usize;
        while accepted < 50 {
            let kind = match rng.gen_range(0..5u32) {
                0 => SequenceKind::SumOfSquares(rng.gen_range(1..=4)),
                1 => SequenceKind::Divisor(c_re(rng.gen_range(-1.5..1.5))),
                2 => SequenceKind::Divisor(Complex64::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                )),
                3 => SequenceKind::RamanujanTau,
                _ => SequenceKind::SumOfSquares(1),
            };
            let decay = rng.gen_range(0.3..2.5);
            let oscillator = match rng.gen_range(0..5u32) {
                0 => Oscillator::J(rng.gen_range(-0.4..2.0)),
                1 => Oscillator::I(rng.gen_range(-0.4..1.5)),
                2 => Oscillator::Cos,
                3 => Oscillator::Sin,
                _ => Oscillator::Exp,
            };
            let scale = match oscillator {
                Oscillator::I(_) => decay * rng.gen_range(0.1..0.8),
                _ => rng.gen_range(0.1..3.0),
            };
            let power = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.5..0.5));
            let index_map = if rng.gen() { IndexMap::Identity } else { IndexMap::Squares };
            let arg_map = if rng.gen() { ArgMap::Linear } else { ArgMap::Sqrt };
            let Ok(spec) = BesselSeriesSpec::new(
                ArithmeticSequence::new(kind),
                power,
                decay,
                oscillator,
                scale,
                index_map,
                arg_map,
            ) else {
                continue;
            };
            let tol = 10f64.powf(rng.gen_range(-10.0..-5.0));
            let Ok((n_cut, tail)) = spec.find_cutoff(tol, DEFAULT_MAX_TERMS) else {
                continue;
            };
            let chosen = spec.eval_truncated(n_cut, tail).unwrap();
            let Ok(extended) = spec.eval_truncated(4 * n_cut, 0.0) else {
                continue;
            };
            let diff = (chosen.value - extended.value).norm();
            let slack = 1e-13 * (1.0 + chosen.value.norm());
            assert!(
                diff <= tail + slack,
                "spec {accepted}: diff {diff:e} > tail {tail:e}"
            );
            accepted += 1;
        }
    });
}

#[test]
fn criterion_8_cli_determinism() {
    criterion("criterion 8 (cli determinism)", || {
        let bin = env!("CARGO_BIN_EXE_verify");
        let hash_of = |jobs: &str| -> String {
            let out = std::process::Command::new(bin)
                .args([
                    "scan",
                    "theta_involution",
                    "--k",
                    "1..2",
                    "--x",
                    "0.8..1.8:3",
                    "--y",
                    "0.1..0.5:3",
                    "--tol",
                    "1e-9",
                    "--format",
                    "json",
                    "--jobs",
                    jobs,
                ])
                .output()
                .expect("scan runs");
            assert!(out.status.success(), "exit {:?}", out.status.code());
            let stderr = String::from_utf8_lossy(&out.stderr);
            stderr
                .lines()
                .find_map(|l| l.strip_prefix("determinism-hash: "))
                .expect("hash line")
                .to_string()
        };
        let h1 = hash_of("1");
        let h4 = hash_of("4");
        let h1b = hash_of("1");
        assert_eq!(h1, h4);
        assert_eq!(h1, h1b);
    });
}
