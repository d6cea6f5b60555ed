//! The acceptance suite: ten exact checks covering every layer of the
//! library. Shared by the `selftest` subcommand and the `acceptance` test.

use std::time::Instant;

use num::traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::baxter::{
    baxterize_auto, baxterize_principal, baxterize_quadratic, baxterize_small, char_matrix,
    constant_re_residual, dif_residual, instantiate, is_principal, minimal_polynomial, phi,
    project_divisor_residual, regularity_residual, scaling_residual, spectral_re_residual,
    sums_prime_residual, sums_residual, unitarity_residual, AnnPoly, CharMatrixSpec, KPolynomial,
};
use crate::exact::{int, rat, LaurentPoly1, LaurentPoly2, Rational};
use crate::hecke::{HeckeAlgebra, HeckeElem, HeckeParams, Pbw, PowerSign};
use crate::rmatrix::{braid_residual, hecke_residual, jimbo_r, spectral_ybe_residual};
use crate::tensor::RingMatrix;

pub const DEFAULT_SEED: u64 = 0x5eed_0fba_77e5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub checks: usize,
    pub detail: String,
    pub elapsed_ms: u64,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} {} ({} checks, {} ms){}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.checks,
            self.elapsed_ms,
            if self.passed {
                String::new()
            } else {
                format!(": {}", self.detail)
            }
        )
    }
}

/// Counts checks and keeps the first failure.
struct Tally {
    checks: usize,
    failure: Option<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            checks: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn require<T, E: std::fmt::Display>(&mut self, r: Result<T, E>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.check(false, || format!("{what}: {e}"));
                None
            }
        }
    }
}

pub const NAMES: [&str; 10] = [
    "Hecke condition and braid relation",
    "spectral Yang-Baxter equation",
    "constant reflection equation on character matrices",
    "spectral reflection equation on matrices",
    "spectral reflection equation in the cyclotomic Hecke algebra",
    "small solution",
    "unitarity and regularity",
    "divisor projection and scaling",
    "Hecke algebra structure",
    "phi-sequence lemmas",
];

pub fn run(id: u8, seed: u64) -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    match id {
        1 => hecke_braid(&mut t),
        2 => spectral_ybe(&mut t),
        3 => constant_re(&mut t),
        4 => matrix_spectral(&mut t),
        5 => abstract_spectral(&mut t, seed),
        6 => small_solution(&mut t),
        7 => unitarity(&mut t, seed),
        8 => projection_scaling(&mut t),
        9 => algebra_structure(&mut t, seed),
        10 => lemmas(&mut t, seed),
        _ => t.check(false, || format!("no criterion {id}")),
    }
    let name = NAMES
        .get((id as usize).wrapping_sub(1))
        .copied()
        .unwrap_or("unknown");
    CriterionOutcome {
        id,
        name,
        passed: t.failure.is_none() && t.checks > 0,
        checks: t.checks,
        detail: t.failure.unwrap_or_default(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    (1..=10).map(|id| run(id, seed)).collect()
}

fn q_values() -> [Rational; 2] {
    [int(2), rat(3, 2)]
}

fn hecke_braid(t: &mut Tally) {
    for d in 2..=4 {
        for q in [int(2), rat(3, 2), rat(-5, 2)] {
            let Some(rs) = t.require(jimbo_r(d, q.clone()), "jimbo") else {
                continue;
            };
            t.check(hecke_residual(&rs).is_zero(), || {
                format!("Hecke fails d={d} q={q}")
            });
            t.check(braid_residual(&rs).is_zero(), || {
                format!("braid fails d={d} q={q}")
            });
        }
    }
}

fn spectral_ybe(t: &mut Tally) {
    for d in 2..=3 {
        for q in q_values() {
            let Some(rs) = t.require(jimbo_r(d, q.clone()), "jimbo") else {
                continue;
            };
            t.check(spectral_ybe_residual(&rs).is_zero(), || {
                format!("spectral YBE fails d={d} q={q}")
            });
        }
    }
}

/// Every `(pairs, lambdas, zeros)` with `2 <= size <= 6`.
fn char_specs() -> Vec<CharMatrixSpec> {
    let mut out = Vec::new();
    let params = [(int(1), int(2)), (rat(-1, 2), int(3))];
    for size in 2..=6usize {
        for pairs in 0..=size / 2 {
            for lambdas in 0..=size - 2 * pairs {
                let zeros = size - 2 * pairs - lambdas;
                for (lambda, mu) in &params {
                    let u = (0..pairs)
                        .map(|i| {
                            if i % 2 == 0 {
                                int(i as i64 + 1)
                            } else {
                                rat(-2, i as i64 + 2)
                            }
                        })
                        .collect();
                    out.push(CharMatrixSpec {
                        pairs,
                        lambdas,
                        zeros,
                        lambda: lambda.clone(),
                        mu: mu.clone(),
                        u,
                    });
                }
            }
        }
    }
    out
}

fn constant_re(t: &mut Tally) {
    for spec in char_specs() {
        let Some(k) = t.require(char_matrix(&spec), "char_matrix") else {
            continue;
        };
        for q in q_values() {
            let Some(rs) = t.require(jimbo_r(spec.size(), q.clone()), "jimbo") else {
                continue;
            };
            let Some(res) = t.require(constant_re_residual(&rs, &k), "residual") else {
                continue;
            };
            t.check(res.is_zero(), || format!("RE fails for {spec:?}, q={q}"));
        }
    }
    let Some(rs) = t.require(jimbo_r(2, int(2)), "jimbo") else {
        return;
    };
    let diag = RingMatrix::diag(vec![int(1), int(2)]);
    let falsified = constant_re_residual(&rs, &diag).map(|r| !r.is_zero());
    t.check(falsified == Ok(true), || {
        "diag(1,2) was not falsified".into()
    });
}

fn matrix_spectral(t: &mut Tally) {
    let two = CharMatrixSpec {
        pairs: 1,
        lambdas: 0,
        zeros: 0,
        lambda: int(1),
        mu: int(2),
        u: vec![int(1)],
    };
    let three = CharMatrixSpec {
        zeros: 1,
        ..two.clone()
    };
    let (Some(k2), Some(k3)) = (
        t.require(char_matrix(&two), "char_matrix"),
        t.require(char_matrix(&three), "char_matrix"),
    ) else {
        return;
    };
    let (a0, a1) = (int(3), int(-2));
    let mut cases: Vec<(KPolynomial, RingMatrix<Rational>, &str)> = [int(0), rat(5, 3), int(-4)]
        .into_iter()
        .map(|zeta| {
            (
                baxterize_quadratic(&a0, &a1, &int(0), &zeta),
                k2.clone(),
                "quadratic",
            )
        })
        .collect();
    let Some(p3) = t.require(minimal_polynomial(&k3, false), "minpoly") else {
        return;
    };
    t.check(p3.coeffs() == [int(3), int(-2), int(0)], || {
        format!("minpoly of the 3x3 matrix: {p3:?}")
    });
    for xi in [int(1), int(2), rat(-3, 2)] {
        if let Some(kp) = t.require(baxterize_principal(&p3, &xi, &int(0)), "cubic, zeta = 0") {
            cases.push((kp, k3.clone(), "cubic, zeta = 0"));
        }
    }
    for zeta in [int(0), int(5), rat(-7, 2)] {
        if let Some(kp) = t.require(baxterize_principal(&p3, &int(0), &zeta), "cubic, xi = 0") {
            cases.push((kp, k3.clone(), "cubic, xi = 0"));
        }
    }
    for (kp, k, label) in &cases {
        let Some(inst) = t.require(instantiate(kp, k), "instantiate") else {
            continue;
        };
        for q in q_values() {
            let Some(rs) = t.require(jimbo_r(k.rows(), q.clone()), "jimbo") else {
                continue;
            };
            let res = spectral_re_residual(&rs, &inst.numerator);
            t.check(res.map(|r| r.is_zero()) == Ok(true), || {
                format!("{label} solution fails, q={q}: {kp}")
            });
        }
    }
}

const PRIMES: [i64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

fn prime_poly(rng: &mut ChaCha8Rng, n: usize) -> AnnPoly {
    let mut pool = PRIMES.to_vec();
    pool.shuffle(rng);
    AnnPoly::new(pool[..=n].iter().map(|&p| int(p)).collect()).expect("nonempty")
}

fn xi_values() -> [Rational; 3] {
    [int(1), int(2), int(-3)]
}

/// Principal solutions over random distinct-prime annihilators, `n = 1..=4`.
fn principal_samples(seed: u64) -> Vec<KPolynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 5);
    let mut out = Vec::new();
    for n in 1..=4 {
        let p = prime_poly(&mut rng, n);
        for xi in xi_values() {
            out.push(baxterize_auto(&p, &xi).expect("xi nonzero"));
        }
    }
    out
}

fn algebra(t: &mut Tally, p: &AnnPoly, q: &Rational) -> Option<HeckeAlgebra> {
    let params = t.require(HeckeParams::new(p.clone(), q.clone()), "params")?;
    t.require(HeckeAlgebra::new(params), "algebra")
}

fn abstract_spectral(t: &mut Tally, seed: u64) {
    for kp in principal_samples(seed) {
        let mut built = Vec::new();
        for q in q_values() {
            let Some(h) = algebra(t, kp.poly(), &q) else {
                continue;
            };
            // the construction never sees q
            let again = baxterize_principal(kp.poly(), kp.xi(), kp.zeta());
            t.check(again.as_ref() == Ok(&kp), || {
                "construction is not reproducible".into()
            });
            built.push(again);
            let res = h.re_spectral_residual(kp.coeffs());
            t.check(res.map(|r| r.is_zero()) == Ok(true), || {
                format!("n={} xi={} q={q}: {kp}", kp.n(), kp.xi())
            });
        }
        t.check(built.windows(2).all(|w| w[0] == w[1]), || {
            "solution depends on q".into()
        });
        t.check(kp.zeta() * kp.xi() == *kp.poly().constant_term(), || {
            "zeta != A_n/xi".into()
        });
        t.check(is_principal(&kp), || format!("not principal: {kp}"));
    }
}

fn small_solution(t: &mut Tally) {
    let mut polys = vec![AnnPoly::from_roots(&[int(1), int(2), int(3), int(6)]).expect("roots")];
    polys.push(AnnPoly::new(vec![int(5), int(-7), int(11), int(-36)]).expect("nonempty"));
    for p in &polys {
        for root in [int(6), int(-6)] {
            let Some(kp) = t.require(baxterize_small(p, &root), "small") else {
                continue;
            };
            t.check(!is_principal(&kp), || {
                "small solution classified as principal".into()
            });
            for q in q_values() {
                let Some(h) = algebra(t, p, &q) else { continue };
                let res = h.re_spectral_residual(kp.coeffs());
                t.check(res.map(|r| r.is_zero()) == Ok(true), || {
                    format!("small solution fails root={root} q={q}: {kp}")
                });
            }
        }
    }
    let expected = [
        LaurentPoly1::x_minus_x_inv(),
        LaurentPoly1::x_minus_x_inv().scale(&int(-12)),
        &LaurentPoly1::from_terms([(0, int(47)), (1, int(6))]) * &LaurentPoly1::x_minus_x_inv(),
        LaurentPoly1::from_terms([(-1, int(72)), (0, int(72))]),
    ];
    if let Some(kp) = t.require(baxterize_small(&polys[0], &int(6)), "small") {
        t.check(kp.coeffs() == expected, || {
            format!("unexpected small solution {kp}")
        });
    }
    let degenerate = AnnPoly::new(vec![int(5), int(-7), int(11), int(0)]).expect("nonempty");
    let limit = baxterize_small(&degenerate, &int(0));
    let principal = baxterize_principal(&degenerate, &int(0), &int(0));
    t.check(
        matches!((&limit, &principal), (Ok(a), Ok(b)) if a.coeffs() == b.coeffs()),
        || "the A_3 = 0 limit differs from the xi = 0 principal solution".into(),
    );
}

fn unitarity(t: &mut Tally, seed: u64) {
    for kp in principal_samples(seed) {
        let u = unitarity_residual(&kp);
        t.check(matches!(&u, Ok(v) if v.iter().all(Zero::is_zero)), || {
            format!("unitarity fails: {kp}")
        });
        let r = regularity_residual(&kp);
        t.check(
            matches!(&r, Ok((a, b)) if a.iter().chain(b).all(Zero::is_zero)),
            || format!("regularity fails: {kp}"),
        );
    }
    let p = AnnPoly::from_roots(&[int(1), int(2), int(3)]).expect("roots");
    let Some(kp) = t.require(baxterize_principal(&p, &int(1), &int(6)), "sample") else {
        return;
    };
    let (Some(at2), Some(at_half)) = (
        t.require(kp.value_at(&int(2)), "K(2)"),
        t.require(kp.value_at(&rat(1, 2)), "K(1/2)"),
    ) else {
        return;
    };
    t.check(at2 == [int(1), int(-4), int(3)], || {
        format!("K(2) = {at2:?}")
    });
    let prod = p.mul_descending(&at2, &at_half);
    t.check(prod.iter().all(Zero::is_zero), || {
        format!("K(2)K(1/2) = {prod:?}")
    });
}

fn projection_scaling(t: &mut Tally) {
    let p = AnnPoly::from_roots(&[int(1), int(2), int(3)]).expect("roots");
    for pair in [[1, 2], [1, 3], [2, 3]] {
        let pt = AnnPoly::from_roots(&pair.map(int)).expect("roots");
        for xi in xi_values() {
            let r = project_divisor_residual(&p, &pt, &xi);
            t.check(matches!(&r, Ok(v) if v.iter().all(Zero::is_zero)), || {
                format!("projection to roots {pair:?} fails, xi={xi}")
            });
        }
    }
    for xi in [int(2), int(-3)] {
        let r = scaling_residual(&p, &xi);
        t.check(matches!(&r, Ok(v) if v.iter().all(Zero::is_zero)), || {
            format!("scaling fails, xi={xi}")
        });
    }
}

fn random_elem(rng: &mut ChaCha8Rng, n: usize) -> HeckeElem<Rational> {
    let terms = rng.gen_range(1..=4);
    HeckeElem::from_terms((0..terms).map(|_| {
        let b = Pbw::new(
            rng.gen_range(0..=n),
            rng.gen_range(0..=n),
            rng.gen_range(0..=1),
        );
        let c = rat(rng.gen_range(-6..=6), rng.gen_range(1..=3));
        (b, c)
    }))
}

fn random_laurent(rng: &mut ChaCha8Rng) -> LaurentPoly1 {
    let terms = rng.gen_range(0..=3);
    LaurentPoly1::from_terms(
        (0..terms).map(|_| (rng.gen_range(-2..=2), int(rng.gen_range(-4..=4)))),
    )
}

fn algebra_structure(t: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
    for n in 1..=3 {
        let p = prime_poly(&mut rng, n);
        let q = if n % 2 == 0 { int(2) } else { rat(3, 2) };
        let Some(h) = algebra(t, &p, &q) else {
            continue;
        };
        for _ in 0..200 {
            let (a, b, c) = (
                random_elem(&mut rng, n),
                random_elem(&mut rng, n),
                random_elem(&mut rng, n),
            );
            let left = h.mul(&h.mul(&a, &b), &c);
            let right = h.mul(&a, &h.mul(&b, &c));
            t.check(left == right, || {
                format!("associativity fails for n={n}: {a} | {b} | {c}")
            });
        }
        for m in -2..=3 {
            for k in 1..=3 {
                for sign in [PowerSign::Plus, PowerSign::Minus] {
                    let r = h.lemma_pm_residual(m, k, sign);
                    t.check(r.map(|e| e.is_zero()) == Ok(true), || {
                        format!("commutator identity {sign:?} fails n={n} m={m} k={k}")
                    });
                }
            }
        }
        let pairs = h.l_basis_pairs().to_vec();
        for (idx, &(j, i)) in pairs.iter().enumerate() {
            let Some(e) = t.require(h.e_basis(j, i), "e_basis") else {
                continue;
            };
            let mut expected = vec![Rational::zero(); pairs.len()];
            expected[idx] = Rational::one();
            t.check(h.l_expand(&e) == Some(expected), || {
                format!("coordinates of e_({j};{i})")
            });
        }
        let coords: Vec<Rational> = (0..pairs.len())
            .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4)))
            .collect();
        let mut combo = HeckeElem::zero();
        for (c, &(j, i)) in coords.iter().zip(&pairs) {
            combo = combo + h.e_basis(j, i).expect("in range").scale(c);
        }
        t.check(h.l_expand(&combo) == Some(coords.clone()), || {
            format!("coordinates of {combo}")
        });
        t.check(h.l_expand(&h.r::<Rational>()).is_none(), || {
            "R reported inside L".into()
        });

        let Some((plus, minus)) = t.require(h.idempotents(), "idempotents") else {
            continue;
        };
        let one = HeckeElem::<Rational>::one();
        t.check(h.mul(&plus, &plus) == plus, || {
            "P+ is not idempotent".into()
        });
        t.check(h.mul(&minus, &minus) == minus, || {
            "P- is not idempotent".into()
        });
        t.check(h.mul(&plus, &minus).is_zero(), || "P+P- != 0".into());
        t.check(plus + minus == one, || "P+ + P- != 1".into());
    }

    // the full and reduced residuals agree up to the factor x
    let p = AnnPoly::new(vec![int(2), int(3), int(5)]).expect("nonempty");
    let Some(h) = algebra(t, &p, &int(2)) else {
        return;
    };
    let x = LaurentPoly2::monomial((1, 0), Rational::one());
    let mut nonzero = 0;
    for _ in 0..50 {
        let kx: Vec<LaurentPoly1> = (0..=p.n()).map(|_| random_laurent(&mut rng)).collect();
        let (Some(full), Some(reduced)) = (
            t.require(h.re_spectral_residual(&kx), "full residual"),
            t.require(h.re_prime_residual(&kx), "reduced residual"),
        ) else {
            continue;
        };
        if !full.is_zero() {
            nonzero += 1;
        }
        t.check(reduced.scale_by(&x) == full, || {
            format!("reduced form differs for {kx:?}")
        });
    }
    t.check(nonzero >= 45, || {
        format!("only {nonzero} of 50 samples were non-solutions")
    });
}

fn random_poly(rng: &mut ChaCha8Rng) -> AnnPoly {
    let n = rng.gen_range(1..=5);
    AnnPoly::new(
        (0..=n)
            .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=3)))
            .collect(),
    )
    .expect("nonempty")
}

fn lemmas(t: &mut Tally, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 10);
    for _ in 0..20 {
        let p = random_poly(&mut rng);
        let n = p.n();
        let xi = loop {
            let v = rat(rng.gen_range(-7..=7), rng.gen_range(1..=4));
            if !v.is_zero() {
                break v;
            }
        };
        let label = || format!("A={:?} xi={xi}", p.coeffs());
        if let Some(f) = t.require(phi(&p, &xi, n + 1), "phi") {
            t.check(f[n + 1] == -p.eval_scaled(&xi), || {
                format!("phi_(n+1) != -p(xi x), {}", label())
            });
        }
        for m in 0..=n {
            for i in 0..=m {
                let r = dif_residual(&p, &xi, i, m);
                t.check(r.map(|e| e.is_zero()) == Ok(true), || {
                    format!("dif i={i} m={m}, {}", label())
                });
            }
        }
        for k in 0..n {
            for i in 0..=n {
                let r = sums_residual(&p, k, i);
                t.check(r.map(|e| e.is_zero()) == Ok(true), || {
                    format!("sums k={k} i={i}, {}", label())
                });
            }
        }
        for i in 1..=n {
            for j in 0..=n {
                let r = sums_prime_residual(&p, &xi, i, j);
                t.check(r.map(|e| e.is_zero()) == Ok(true), || {
                    format!("sums' i={i} j={j}, {}", label())
                });
            }
        }
    }
}
