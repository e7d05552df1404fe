//! The local Hecke operator on Whittaker functions.
//!
//! At a place with residue field `F_q`, fix torsion modules `M_0` of type
//! `μ` and `N_0` of type `ν`. Averaging over the extensions
//! `0 → M_0 → E → N_0 → 0` sends `w` to
//! `|Hom(N_0, M_0)|^{-1} Σ_λ N(λ) w(λ)`, where `N(λ)` counts the extensions
//! with `E` of type `λ`. The eigen-identity says this equals `w(μ) w(ν)`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, to_exact_string, Rational};
use crate::hall::{aut_order_poly, g_upper, hall_polynomial};
use crate::numbers::is_prime_power;
use crate::partitions::{enumerate_partitions, Partition};
use crate::whittaker::whittaker_at_partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalHeckeInstance {
    q: u64,
    mu: Partition,
    nu: Partition,
    eigenvalues: Vec<Rational>,
}

impl LocalHeckeInstance {
    pub fn new(q: u64, mu: Partition, nu: Partition, eigenvalues: Vec<Rational>) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::NotPrimePower(q));
        }
        if eigenvalues.is_empty() {
            return Err(Error::InvalidInput("at least one eigenvalue is required".into()));
        }
        if eigenvalues.iter().any(|a| a == &rat(0)) {
            return Err(Error::ZeroEigenvalue);
        }
        Ok(LocalHeckeInstance { q, mu, nu, eigenvalues })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn mu(&self) -> &Partition {
        &self.mu
    }

    pub fn nu(&self) -> &Partition {
        &self.nu
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigenvalues
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.len()
    }
}

/// `|Hom(N_0, M_0)| = q^{Σ_{i,j} min(μ_i, ν_j)}`.
pub fn hom_order(mu: &Partition, nu: &Partition, q: u64) -> BigInt {
    let e: u32 = mu
        .parts()
        .iter()
        .flat_map(|&a| nu.parts().iter().map(move |&b| a.min(b)))
        .sum();
    BigInt::from(q).pow(e)
}

/// `N(λ) = |Hom(N_0, M_0)| g^λ_{μν}(q) a_μ(q) a_ν(q) / a_λ(q)`, the number
/// of extensions of `N_0` by `M_0` whose middle term has type `λ`.
pub fn extension_count(lambda: &Partition, mu: &Partition, nu: &Partition, q: u64) -> Result<Rational> {
    if lambda.weight() != mu.weight() + nu.weight() {
        return Ok(rat(0));
    }
    if !is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    let qr = rat(q as i64);
    let g = hall_polynomial(lambda, mu, nu)?.evaluate(&qr)?;
    let aut = |p: &Partition| aut_order_poly(p).evaluate(&qr);
    let hom = Rational::from_integer(hom_order(mu, nu, q));
    let n = hom * g * aut(mu)? * aut(nu)? / aut(lambda)?;
    if !n.is_integer() || n < rat(0) {
        return Err(Error::InternalConsistency(format!(
            "extension count for {lambda} from {mu}, {nu} at q = {q} is {}",
            to_exact_string(&n)
        )));
    }
    Ok(n)
}

/// Both evaluations of the Hecke operator at one place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeValue {
    /// `|Hom|^{-1} Σ_λ N(λ) w(λ)`.
    pub extension_form: Rational,
    /// `Σ_λ g^{μν}_λ(q) w(λ)`.
    pub structure_form: Rational,
}

fn hecke_forms(inst: &LocalHeckeInstance) -> Result<HeckeValue> {
    let qr = rat(inst.q as i64);
    let hom = Rational::from_integer(hom_order(&inst.mu, &inst.nu, inst.q));
    let mut extension_form = rat(0);
    let mut structure_form = rat(0);
    for lambda in enumerate_partitions(inst.mu.weight() + inst.nu.weight(), None) {
        let n = extension_count(&lambda, &inst.mu, &inst.nu, inst.q)?;
        let c = g_upper(&lambda, &inst.mu, &inst.nu)?.evaluate(&qr)?;
        if n == rat(0) && c == rat(0) {
            continue;
        }
        let w = whittaker_at_partition(&lambda, &inst.eigenvalues, &qr)?;
        extension_form += n * &w;
        structure_form += c * w;
    }
    Ok(HeckeValue {
        extension_form: extension_form / hom,
        structure_form,
    })
}

/// Applies the local Hecke operator to `w` and returns its value,
/// after checking that the extension-count and structure-constant forms
/// agree.
pub fn hecke_apply_local(inst: &LocalHeckeInstance) -> Result<Rational> {
    let v = hecke_forms(inst)?;
    if v.extension_form != v.structure_form {
        return Err(Error::InternalConsistency(format!(
            "Hecke forms disagree: {} vs {}",
            to_exact_string(&v.extension_form),
            to_exact_string(&v.structure_form)
        )));
    }
    Ok(v.extension_form)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeReport {
    pub q: u64,
    pub mu: Partition,
    pub nu: Partition,
    pub eigenvalues: Vec<String>,
    /// The Hecke operator applied to `w`, via extension counts.
    pub lhs: String,
    /// The same value via the structure constants `g^{μν}_λ`.
    pub lhs_structure_form: String,
    /// `w(μ) · w(ν)`.
    pub rhs: String,
    pub forms_agree: bool,
    pub equal: bool,
}

/// Compares the Hecke operator applied to `w` with `w(μ) w(ν)`.
pub fn hecke_identity_check(inst: &LocalHeckeInstance) -> Result<HeckeReport> {
    let qr = rat(inst.q as i64);
    let v = hecke_forms(inst)?;
    let rhs = whittaker_at_partition(&inst.mu, &inst.eigenvalues, &qr)?
        * whittaker_at_partition(&inst.nu, &inst.eigenvalues, &qr)?;
    let forms_agree = v.extension_form == v.structure_form;
    Ok(HeckeReport {
        q: inst.q,
        mu: inst.mu.clone(),
        nu: inst.nu.clone(),
        eigenvalues: inst.eigenvalues.iter().map(to_exact_string).collect(),
        lhs: to_exact_string(&v.extension_form),
        lhs_structure_form: to_exact_string(&v.structure_form),
        rhs: to_exact_string(&rhs),
        forms_agree,
        equal: forms_agree && v.extension_form == rhs,
    })
}
