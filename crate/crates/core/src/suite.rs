//! Named identity suites with deterministic, exactly serialized reports.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characters::{induce, inner_product_t, outer_product, restrict, ClassFunction, PairClassFunction};
use crate::dvr::{compare, random_spec, MAX_ORACLE_SIZE};
use crate::error::{Error, Result};
use crate::exact::rational::pow_i;
use crate::exact::{rat, to_exact_string, LaurentPolynomial, Rational, RationalFunction};
use crate::hall::{brute, g_upper, hall_polynomial, hall_polynomial_report};
use crate::hecke::{extension_count, hecke_identity_check, hom_order, LocalHeckeInstance};
use crate::kostka::{dominating, kostka_foulkes};
use crate::numbers::phi;
use crate::partitions::{enumerate_partitions, Partition};
use crate::whittaker::{
    green_polynomial, schur_eval, whittaker_global, whittaker_local_at, x_polynomial, DivisorTuple,
    LocalSystemSpec, WhittakerMode,
};

/// Suite names with their default and largest accepted size bounds.
pub const SUITES: &[(&str, u32, u32)] = &[
    ("anchors", 6, 10),
    ("extension-mass", 5, 6),
    ("hall-consistency", 6, 6),
    ("hecke-41", 4, 5),
    ("kostka-len2", 10, 16),
    ("lemma42-ind", 5, 6),
    ("lemma42-res", 5, 6),
    ("orthogonality", 5, 7),
    ("snf-33", 4, MAX_ORACLE_SIZE as u32),
    ("telescope-n2", 8, 16),
];

/// Specs drawn by `snf-33`, and the largest valuation used.
pub const SNF_SAMPLES: usize = 500;
pub const SNF_MAX_VALUATION: u32 = 4;

/// Eigenvalue draws per grid point in randomized suites.
pub const DRAWS: usize = 5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub lhs: Value,
    pub rhs: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub bound: u32,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

struct Runner {
    timings: bool,
    cases: Vec<CaseResult>,
}

impl Runner {
    fn run(&mut self, id: String, f: impl FnOnce() -> Result<(bool, Value, Value)>) {
        let start = Instant::now();
        let out = f();
        let elapsed_ms = self.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        self.cases.push(match out {
            Ok((pass, lhs, rhs)) => CaseResult {
                id,
                pass,
                lhs,
                rhs,
                error: None,
                elapsed_ms,
            },
            Err(e) => CaseResult {
                id,
                pass: false,
                lhs: Value::Null,
                rhs: Value::Null,
                error: Some(e.to_string()),
                elapsed_ms,
            },
        });
    }

    /// Records `lhs == rhs`, serializing both sides.
    fn eq<T: PartialEq + Serialize>(&mut self, id: String, f: impl FnOnce() -> Result<(T, T)>) {
        self.run(id, || {
            let (l, r) = f()?;
            Ok((l == r, to_value(&l), to_value(&r)))
        });
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn q_str(x: &Rational) -> String {
    to_exact_string(x)
}

fn rf_str(x: &RationalFunction) -> String {
    x.to_string()
}

/// A nonzero rational `±a/b` with `1 ≤ a ≤ 5`, `1 ≤ b ≤ 4`.
pub fn random_eigenvalue<R: Rng>(rng: &mut R) -> Rational {
    let num: i64 = rng.gen_range(1..=5);
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let den: i64 = rng.gen_range(1..=4);
    crate::exact::ratio(sign * num, den)
}

pub fn random_eigenvalues<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_eigenvalue(rng)).collect()
}

fn alpha_str(alpha: &[Rational]) -> String {
    alpha.iter().map(q_str).collect::<Vec<_>>().join(",")
}

pub fn default_bound(name: &str) -> Result<u32> {
    SUITES
        .iter()
        .find(|s| s.0 == name)
        .map(|s| s.1)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))
}

pub fn run_identity_suite(name: &str, bound: u32, seed: u64) -> Result<SuiteReport> {
    run_identity_suite_with(name, bound, seed, false)
}

/// As [`run_identity_suite`]; with `timings` each case records its wall
/// time, which makes the report nondeterministic.
pub fn run_identity_suite_with(name: &str, bound: u32, seed: u64, timings: bool) -> Result<SuiteReport> {
    let &(_, _, max) = SUITES
        .iter()
        .find(|s| s.0 == name)
        .ok_or_else(|| Error::UnknownSuite(name.to_string()))?;
    if bound > max {
        return Err(Error::TooLarge(format!("suite {name} supports bounds up to {max}, got {bound}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut r = Runner {
        timings,
        cases: Vec::new(),
    };
    match name {
        "orthogonality" => orthogonality(&mut r, bound),
        "lemma42-res" => restriction(&mut r, bound),
        "lemma42-ind" => induction(&mut r, bound),
        "hecke-41" => hecke(&mut r, bound, &mut rng)?,
        "snf-33" => snf(&mut r, bound, &mut rng),
        "telescope-n2" => telescope(&mut r, bound, &mut rng),
        "kostka-len2" => kostka_len2(&mut r, bound),
        "hall-consistency" => hall_consistency(&mut r, bound),
        "extension-mass" => extension_mass(&mut r, bound),
        "anchors" => anchors(&mut r, bound, &mut rng),
        _ => unreachable!("suite table and dispatch disagree"),
    }
    let mut cases = r.cases;
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = cases.iter().filter(|c| c.pass).count();
    Ok(SuiteReport {
        suite: name.to_string(),
        bound,
        seed,
        summary: Summary {
            total: cases.len(),
            passed,
            failed: cases.len() - passed,
        },
        cases,
    })
}

fn phi_product(lambda: &Partition) -> LaurentPolynomial {
    lambda.multiplicities().values().map(|&m| phi(m)).product()
}

/// `(X^λ, X^ρ)_t = δ_{λρ} Π_i φ_{m_i(λ)}(t)`.
fn orthogonality(r: &mut Runner, bound: u32) {
    for n in 0..=bound {
        let parts = enumerate_partitions(n, None);
        let xs: Vec<ClassFunction> = parts.iter().map(x_polynomial).collect();
        for (i, a) in parts.iter().enumerate() {
            for (j, b) in parts.iter().enumerate() {
                r.run(format!("orthogonality/{n}/{a}|{b}"), || {
                    let lhs = inner_product_t(&xs[i], &xs[j])?;
                    let rhs = if i == j {
                        RationalFunction::from(phi_product(a))
                    } else {
                        RationalFunction::zero()
                    };
                    Ok((lhs == rhs, json!(rf_str(&lhs)), json!(rf_str(&rhs))))
                });
            }
        }
    }
}

fn splits(total: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..=total).map(move |m| (m, total - m))
}

/// `Res Q^λ = Σ_{μ,ν} g^λ_{μν}(t) Q^μ × Q^ν`.
fn restriction(r: &mut Runner, bound: u32) {
    for total in 0..=bound {
        for lambda in enumerate_partitions(total, None) {
            for (m, n) in splits(total) {
                r.eq(format!("lemma42-res/{total}/{lambda}/{m}+{n}"), || {
                    let lhs = restrict(&green_polynomial(&lambda), m, n)?;
                    let mut rhs = PairClassFunction::zero(m, n);
                    for mu in enumerate_partitions(m, None) {
                        for nu in enumerate_partitions(n, None) {
                            let g = hall_polynomial(&lambda, &mu, &nu)?;
                            if g.is_zero() {
                                continue;
                            }
                            let term = outer_product(&green_polynomial(&mu), &green_polynomial(&nu));
                            rhs = rhs.add(&term.scale(&RationalFunction::from(g)))?;
                        }
                    }
                    Ok((lhs, rhs))
                });
            }
        }
    }
}

/// `Ind (Q^μ × Q^ν) = Σ_λ g^{μν}_λ(t) Q^λ`.
fn induction(r: &mut Runner, bound: u32) {
    for total in 0..=bound {
        for (m, n) in splits(total) {
            for mu in enumerate_partitions(m, None) {
                for nu in enumerate_partitions(n, None) {
                    r.eq(format!("lemma42-ind/{total}/{mu}|{nu}"), || {
                        let lhs = induce(&outer_product(&green_polynomial(&mu), &green_polynomial(&nu)), m, n)?;
                        let mut rhs = ClassFunction::zero(total);
                        for lambda in enumerate_partitions(total, None) {
                            let c = g_upper(&lambda, &mu, &nu)?;
                            if !c.is_zero() {
                                rhs = rhs.add(&green_polynomial(&lambda).scale(&c))?;
                            }
                        }
                        Ok((lhs, rhs))
                    });
                }
            }
        }
    }
}

fn pairs_up_to(total: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for t in 0..=total {
        for (a, b) in splits(t) {
            for mu in enumerate_partitions(a, None) {
                for nu in enumerate_partitions(b, None) {
                    out.push((mu.clone(), nu));
                }
            }
        }
    }
    out
}

/// Places of `F_q` with `q` among these sizes in the Hecke suite.
pub const HECKE_FIELDS: [u64; 3] = [2, 3, 5];
pub const HECKE_MAX_RANK: usize = 3;

/// Hecke operator applied to `w` against `w(μ) w(ν)`, and agreement of the
/// extension-count and structure-constant forms.
fn hecke(r: &mut Runner, bound: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    for rank in 1..=HECKE_MAX_RANK {
        for (mu, nu) in pairs_up_to(bound) {
            for q in HECKE_FIELDS {
                for k in 0..DRAWS {
                    let alpha = random_eigenvalues(rng, rank);
                    let inst = LocalHeckeInstance::new(q, mu.clone(), nu.clone(), alpha.clone())?;
                    r.run(format!("hecke-41/rank={rank}/q={q}/{mu}|{nu}/draw={k}"), || {
                        let rep = hecke_identity_check(&inst)?;
                        let lhs = json!({"extension_form": rep.lhs, "structure_form": rep.lhs_structure_form});
                        let rhs = json!({"eigenvalues": alpha_str(&alpha), "w_mu_w_nu": rep.rhs});
                        Ok((rep.equal, lhs, rhs))
                    });
                }
            }
        }
    }
    Ok(())
}

/// Closed-form elementary divisors against minor valuations; `bound` is the
/// largest matrix size.
fn snf(r: &mut Runner, bound: u32, rng: &mut ChaCha8Rng) {
    for i in 0..SNF_SAMPLES {
        let spec = random_spec(rng, bound.max(1) as usize, SNF_MAX_VALUATION);
        r.run(format!("snf-33/{i:04}"), || {
            let c = compare(&spec)?;
            let lhs = json!({"a": c.a, "d": c.d, "closed": c.closed, "valuations": c.closed_valuations});
            Ok((c.equal, lhs, to_value(&c.oracle_valuations)))
        });
    }
}

pub const TELESCOPE_FIELDS: [u64; 3] = [2, 3, 4];

/// `w(m₁, m₂) - w(m₁ + 2, m₂ - 1) = q^{m₂} s_{(m₁+m₂, m₂)}(α)` in rank 2;
/// `bound` caps `m₁ + 2 m₂`.
fn telescope(r: &mut Runner, bound: u32, rng: &mut ChaCha8Rng) {
    for m2 in 1..=bound / 2 {
        for m1 in 0..=bound - 2 * m2 {
            for q in TELESCOPE_FIELDS {
                for k in 0..DRAWS {
                    let alpha = random_eigenvalues(rng, 2);
                    r.run(format!("telescope-n2/m1={m1}/m2={m2}/q={q}/draw={k}"), || {
                        let qx = rat(q as i64);
                        let lhs = whittaker_local_at(&alpha, &qx, &[m1, m2])?
                            - whittaker_local_at(&alpha, &qx, &[m1 + 2, m2 - 1])?;
                        let shape = Partition::new(vec![m1 + m2, m2])?;
                        let rhs = pow_i(&qx, m2 as i64)? * schur_eval(&shape, &alpha);
                        let l = json!({"alpha": alpha_str(&alpha), "value": q_str(&lhs)});
                        Ok((lhs == rhs, l, json!(q_str(&rhs))))
                    });
                }
            }
        }
    }
}

/// `K_{λμ}(t) = t^{λ₁ - μ₁}` whenever `ℓ(μ) ≤ 2` and `λ ≥ μ`.
fn kostka_len2(r: &mut Runner, bound: u32) {
    for n in 0..=bound {
        for mu in enumerate_partitions(n, Some(2)) {
            for lambda in dominating(&mu, Some(2)) {
                r.eq(format!("kostka-len2/{n}/{lambda}|{mu}"), || {
                    let lhs = kostka_foulkes(&lambda, &mu);
                    let rhs = LaurentPolynomial::t_pow(lambda.part(0) as i64 - mu.part(0) as i64);
                    Ok((lhs, rhs))
                });
            }
        }
    }
}

/// Checks each interpolated `g^λ_{μν}` for integrality, degree, symmetry
/// and agreement with its holdout counts.
fn hall_consistency(r: &mut Runner, bound: u32) {
    for total in 0..=bound {
        for lambda in enumerate_partitions(total, None) {
            for (a, b) in splits(total) {
                for mu in enumerate_partitions(a, None) {
                    for nu in enumerate_partitions(b, None) {
                        r.run(format!("hall-consistency/{total}/{lambda}/{mu}|{nu}"), || {
                            let rep = hall_polynomial_report(&lambda, &mu, &nu)?;
                            let swapped = hall_polynomial(&lambda, &nu, &mu)?;
                            let p = &rep.polynomial;
                            let integral = p.has_integer_coefficients() && p.is_polynomial();
                            let degree_ok = p.degree().is_none_or(|d| d <= rep.degree_bound);
                            let symmetric = &swapped == p;
                            let enumerated = total > brute::MAX_WEIGHT
                                || rep.holdouts.iter().any(|h| h.method == crate::hall::SampleMethod::Enumeration);
                            let lhs = json!({
                                "polynomial": p.to_string(),
                                "degree_bound": rep.degree_bound,
                                "holdouts": rep.holdouts,
                            });
                            let rhs = json!({
                                "integral": integral,
                                "within_degree": degree_ok,
                                "symmetric": symmetric,
                                "enumeration_holdout": enumerated,
                            });
                            Ok((integral && degree_ok && symmetric && enumerated, lhs, rhs))
                        });
                    }
                }
            }
        }
    }
}

pub const MASS_FIELDS: [u64; 3] = [2, 3, 4];

/// `Σ_λ N(λ) = |Hom(N_0, M_0)|`, each `N(λ)` a non-negative integer.
fn extension_mass(r: &mut Runner, bound: u32) {
    for (mu, nu) in pairs_up_to(bound) {
        for q in MASS_FIELDS {
            r.eq(format!("extension-mass/q={q}/{mu}|{nu}"), || {
                let mut total = rat(0);
                for lambda in enumerate_partitions(mu.weight() + nu.weight(), None) {
                    total += extension_count(&lambda, &mu, &nu, q)?;
                }
                Ok((q_str(&total), q_str(&Rational::from_integer(hom_order(&mu, &nu, q)))))
            });
        }
    }
}

/// Degenerate cases: `w(m, 0, …, 0) = s_{(m)}`, rank one gives `α^m`, and
/// empty inputs give 1.
fn anchors(r: &mut Runner, bound: u32, rng: &mut ChaCha8Rng) {
    for rank in 1..=3usize {
        for m in 0..=bound {
            for q in TELESCOPE_FIELDS {
                let alpha = random_eigenvalues(rng, rank);
                r.eq(format!("anchors/row/rank={rank}/m={m}/q={q}"), || {
                    let mut d = vec![0; rank];
                    d[0] = m;
                    let lhs = whittaker_local_at(&alpha, &rat(q as i64), &d)?;
                    Ok((q_str(&lhs), q_str(&schur_eval(&Partition::row(m), &alpha))))
                });
            }
        }
    }
    for m in 0..=bound {
        for q in TELESCOPE_FIELDS {
            let alpha = random_eigenvalues(rng, 1);
            r.eq(format!("anchors/rank1/m={m}/q={q}"), || {
                let lhs = whittaker_local_at(&alpha, &rat(q as i64), &[m])?;
                Ok((q_str(&lhs), q_str(&pow_i(&alpha[0], m as i64)?)))
            });
        }
    }
    for rank in 1..=3usize {
        let alpha = random_eigenvalues(rng, rank);
        r.eq(format!("anchors/zero/rank={rank}"), || {
            Ok((q_str(&whittaker_local_at(&alpha, &rat(2), &vec![0; rank])?), q_str(&rat(1))))
        });
        r.eq(format!("anchors/empty-divisor/rank={rank}"), || {
            let place = crate::whittaker::Place::new("x", 1, alpha.clone())?;
            let spec = LocalSystemSpec::new(rank, 2, vec![place])?;
            let plain = whittaker_global(&spec, &DivisorTuple::default(), WhittakerMode::Plain)?;
            let top = whittaker_global(&spec, &DivisorTuple::default(), WhittakerMode::Top)?;
            Ok(((q_str(&plain), q_str(&top)), (q_str(&rat(1)), q_str(&rat(1)))))
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_and_oversized() {
        assert_eq!(run_identity_suite("nope", 1, 0), Err(Error::UnknownSuite("nope".into())));
        assert!(matches!(run_identity_suite("kostka-len2", 99, 0), Err(Error::TooLarge(_))));
    }

    #[test]
    fn small_suites_pass() {
        for &(name, _, _) in SUITES {
            let bound = if name == "snf-33" { 3 } else { 2 };
            let rep = run_identity_suite(name, bound, 1).unwrap();
            assert!(rep.all_passed(), "{name}: {:?}", rep.failures().next());
            assert_eq!(rep.summary.passed + rep.summary.failed, rep.summary.total);
            assert!(rep.cases.windows(2).all(|w| w[0].id < w[1].id), "{name} ids not sorted or unique");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_identity_suite("telescope-n2", 4, 3).unwrap()).unwrap();
        let b = serde_json::to_string(&run_identity_suite("telescope-n2", 4, 3).unwrap()).unwrap();
        assert_eq!(a, b);
        let c = serde_json::to_string(&run_identity_suite("telescope-n2", 4, 4).unwrap()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn eigenvalue_draws_are_small_and_nonzero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..200 {
            let x = random_eigenvalue(&mut rng);
            assert!(x != rat(0));
            assert!(x.numer().magnitude() <= &5u32.into() && *x.denom() <= 4.into());
        }
    }
}
