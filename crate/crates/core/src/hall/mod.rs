//! Hall polynomials of finite modules over a discrete valuation ring and the
//! structure constants derived from them.
//!
//! `g^λ_{μν}(q)` is the number of submodules `N` of a module `M` of type `λ`
//! with `N` of type `ν` and `M/N` of type `μ` (it is symmetric in `μ, ν`).
//! The polynomial is recovered by exact interpolation of values computed in
//! the Hall algebra and then checked against exhaustive submodule
//! enumeration at a field size that was not used as a node.

pub mod algebra;
pub mod brute;
pub mod field;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, to_exact_string, LaurentPolynomial, Rational, RationalFunction};
use crate::numbers::{is_prime_power, phi, prime_powers_from};
use crate::partitions::Partition;

pub use algebra::{elementary_hall_number, hall_number};
pub use brute::{aut_count_brute, count_submodules, hom_count_brute, submodule_census};

/// A finite torsion module `⊕_i R/(ϖ^{λ_i})` over a DVR with residue field
/// of size `q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteModuleType {
    q: u64,
    kind: Partition,
}

impl FiniteModuleType {
    pub fn new(q: u64, kind: Partition) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::NotPrimePower(q));
        }
        Ok(FiniteModuleType { q, kind })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn kind(&self) -> &Partition {
        &self.kind
    }

    pub fn cardinality(&self) -> BigInt {
        BigInt::from(self.q).pow(self.kind.weight())
    }

    pub fn aut_order(&self) -> Rational {
        aut_order_poly(&self.kind)
            .evaluate(&rat(self.q as i64))
            .expect("polynomial evaluation")
    }
}

/// Field size at which a Hall number was computed, and how.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallSample {
    pub q: u64,
    pub count: String,
    pub method: SampleMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMethod {
    HallAlgebra,
    Enumeration,
}

/// An interpolated Hall polynomial together with the data behind it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HallReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub degree_bound: i64,
    pub polynomial: LaurentPolynomial,
    /// Interpolation nodes.
    pub samples: Vec<HallSample>,
    /// Independent values the polynomial was checked against.
    pub holdouts: Vec<HallSample>,
}

/// First interpolation node. `q = 2` is reserved for the enumeration check.
const FIRST_NODE: u64 = 3;

type HallCache = Mutex<HashMap<(Partition, Partition, Partition), HallReport>>;

fn hall_cache() -> &'static HallCache {
    static CACHE: OnceLock<HallCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn integral_count(v: Rational, what: &str) -> Result<String> {
    if !v.is_integer() || v < rat(0) {
        return Err(Error::InternalConsistency(format!("{what} = {} is not a count", to_exact_string(&v))));
    }
    Ok(v.to_integer().to_string())
}

/// Interpolates `g^λ_{μν}(t)` and records the samples and holdout checks.
pub fn hall_polynomial_report(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<HallReport> {
    let key = (lambda.clone(), mu.clone(), nu.clone());
    if let Some(r) = hall_cache().lock().expect("hall cache poisoned").get(&key) {
        return Ok(r.clone());
    }
    let degree_bound = lambda.n_stat() as i64 - mu.n_stat() as i64 - nu.n_stat() as i64;
    let mut report = HallReport {
        lambda: lambda.clone(),
        mu: mu.clone(),
        nu: nu.clone(),
        degree_bound,
        polynomial: LaurentPolynomial::zero(),
        samples: Vec::new(),
        holdouts: Vec::new(),
    };
    if lambda.weight() != mu.weight() + nu.weight() {
        hall_cache().lock().expect("hall cache poisoned").insert(key, report.clone());
        return Ok(report);
    }
    let what = format!("g^{{{lambda}}}_{{{mu};{nu}}}");
    let nodes = degree_bound.max(0) as usize + 1;
    let mut qs = prime_powers_from(FIRST_NODE);
    let mut points = Vec::with_capacity(nodes);
    for q in qs.by_ref().take(nodes) {
        let v = hall_number(lambda, mu, nu, &rat(q as i64))?;
        report.samples.push(HallSample {
            q,
            count: integral_count(v.clone(), &what)?,
            method: SampleMethod::HallAlgebra,
        });
        points.push((rat(q as i64), v));
    }
    let poly = LaurentPolynomial::interpolate(&points)?;
    if !poly.has_integer_coefficients() {
        return Err(Error::InternalConsistency(format!("{what} interpolates to {poly}")));
    }
    if poly.degree().unwrap_or(0) > degree_bound.max(0) {
        return Err(Error::InternalConsistency(format!("{what} exceeds its degree bound")));
    }

    let check = |q: u64, expected: Rational, method: SampleMethod| -> Result<HallSample> {
        let predicted = poly.evaluate(&rat(q as i64))?;
        if predicted != expected {
            return Err(Error::InternalConsistency(format!(
                "{what} at q = {q}: polynomial gives {}, {method:?} gives {}",
                to_exact_string(&predicted),
                to_exact_string(&expected)
            )));
        }
        Ok(HallSample {
            q,
            count: integral_count(expected, &what)?,
            method,
        })
    };
    if lambda.weight() <= brute::MAX_WEIGHT {
        let counted = count_submodules(lambda, nu, mu, 2)?;
        report.holdouts.push(check(2, rat(counted as i64), SampleMethod::Enumeration)?);
    }
    let next = qs.next().expect("infinitely many prime powers");
    let extra = hall_number(lambda, mu, nu, &rat(next as i64))?;
    report.holdouts.push(check(next, extra, SampleMethod::HallAlgebra)?);

    report.polynomial = poly;
    hall_cache().lock().expect("hall cache poisoned").insert(key, report.clone());
    Ok(report)
}

/// `g^λ_{μν}(t)`; zero when `|λ| ≠ |μ| + |ν|`.
pub fn hall_polynomial(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<LaurentPolynomial> {
    Ok(hall_polynomial_report(lambda, mu, nu)?.polynomial)
}

fn phi_inverse_product(pi: &Partition) -> LaurentPolynomial {
    pi.multiplicities()
        .values()
        .map(|&m| phi(m).reverse_tilde(0))
        .product()
}

/// `a_π(t) = t^{|π| + 2n(π)} Π_i (1 - t^{-1})⋯(1 - t^{-m_i(π)})`, the order
/// of the automorphism group of a module of type `π` at `t = q`.
pub fn aut_order_poly(pi: &Partition) -> LaurentPolynomial {
    phi_inverse_product(pi).shift(pi.weight() as i64 + 2 * pi.n_stat() as i64)
}

/// `g^{μν}_λ(t) = t^{2n(μ)+2n(ν)-2n(λ)} g^λ_{μν}(t) · Π_i φ_{m_i(μ)}(t^{-1}) φ_{m_i(ν)}(t^{-1}) / φ_{m_i(λ)}(t^{-1})`,
/// equivalently `g^λ_{μν} a_μ a_ν / a_λ`.
pub fn g_upper(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<RationalFunction> {
    let g = hall_polynomial(lambda, mu, nu)?;
    if g.is_zero() {
        return Ok(RationalFunction::zero());
    }
    let shift = 2 * (mu.n_stat() as i64 + nu.n_stat() as i64 - lambda.n_stat() as i64);
    let num = &(&g * &phi_inverse_product(mu)) * &phi_inverse_product(nu);
    RationalFunction::new(num.shift(shift), phi_inverse_product(lambda))
}

/// `f^λ_{μν}(t) = t^{n(λ)-n(μ)-n(ν)} g^λ_{μν}(t^{-1})`.
pub fn hl_structure_f(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<LaurentPolynomial> {
    let shift = lambda.n_stat() as i64 - mu.n_stat() as i64 - nu.n_stat() as i64;
    Ok(hall_polynomial(lambda, mu, nu)?.reverse_tilde(shift))
}
