//! Hall numbers at an explicit residue field size, through the Hall
//! algebra.
//!
//! Products `u_μ u_{(1^m)}` have a closed form (a vertical-strip count of
//! submodules inside the socle). The products
//! `e_σ = u_{(1^{σ'_1})} u_{(1^{σ'_2})} ⋯` form a second basis, so every
//! `u_ν` is a rational combination of them and `u_μ u_ν` follows by
//! associativity.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::rational::pow_i as pow_q;
use crate::exact::Rational;
use crate::numbers::gaussian_binomial_at;
use crate::partitions::{enumerate_partitions, Partition};

type Element = BTreeMap<Partition, Rational>;

/// `G^λ_{μ,(1^m)}(q)`: submodules `N ≅ (F_q)^m` of the type-`λ` module
/// with quotient of type `μ`. Nonzero only when `λ/μ` is a vertical strip;
/// then it equals
/// `q^{n(λ)-n(μ)-n(1^m)} Π_i [λ'_i - λ'_{i+1}; λ'_i - μ'_i]_{q^{-1}}`.
pub fn elementary_hall_number(lambda: &Partition, mu: &Partition, q: &Rational) -> Result<Rational> {
    if mu.weight() > lambda.weight() {
        return Ok(Rational::zero());
    }
    let m = lambda.weight() - mu.weight();
    let vertical = (0..lambda.len()).all(|i| {
        let (l, u) = (lambda.part(i), mu.part(i));
        l >= u && l - u <= 1
    }) && mu.len() <= lambda.len();
    if !vertical {
        return Ok(Rational::zero());
    }
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    let inv = q.recip();
    let mut acc = pow_q(q, lambda.n_stat() as i64 - mu.n_stat() as i64 - (m as i64 * (m as i64 - 1)) / 2)?;
    for i in 0..lc.len() {
        let top = lc.part(i) - lc.part(i + 1);
        let bottom = lc.part(i) - mc.part(i);
        acc *= gaussian_binomial_at(top, bottom, &inv);
    }
    Ok(acc)
}

fn times_elementary(x: &Element, m: u32, q: &Rational) -> Result<Element> {
    let mut out = Element::new();
    for (mu, c) in x {
        for lambda in enumerate_partitions(mu.weight() + m, None) {
            let g = elementary_hall_number(&lambda, mu, q)?;
            if !g.is_zero() {
                let slot = out.entry(lambda).or_insert_with(Rational::zero);
                *slot += c * g;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

fn times_e(x: &Element, sigma: &Partition, q: &Rational) -> Result<Element> {
    sigma
        .conjugate()
        .parts()
        .iter()
        .try_fold(x.clone(), |acc, &m| times_elementary(&acc, m, q))
}

/// Rows of `E^{-1}` where `e_σ = Σ_λ E[σ][λ] u_λ`, so that
/// `u_ν = Σ_σ E^{-1}[ν][σ] e_σ`.
fn inverse_basis_change(n: u32, q: &Rational) -> Result<BTreeMap<Partition, Element>> {
    let parts = enumerate_partitions(n, None);
    let size = parts.len();
    let index: HashMap<&Partition, usize> = parts.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let unit = Element::from([(Partition::empty(), Rational::one())]);
    // augmented [E | I]
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(size);
    for (r, sigma) in parts.iter().enumerate() {
        let mut row = vec![Rational::zero(); 2 * size];
        for (lambda, c) in times_e(&unit, sigma, q)? {
            row[index[&lambda]] = c;
        }
        row[size + r] = Rational::one();
        rows.push(row);
    }
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !rows[r][col].is_zero())
            .ok_or_else(|| Error::InternalConsistency(format!("singular Hall basis change at q = {q}")))?;
        rows.swap(col, pivot);
        let s = rows[col][col].recip();
        for x in rows[col].iter_mut() {
            *x *= &s;
        }
        let prow = rows[col].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let c = row[col].clone();
                for (x, p) in row.iter_mut().zip(&prow) {
                    *x -= &c * p;
                }
            }
        }
    }
    // rows now hold [I | E^{-1}]; E^{-1} is indexed (λ, σ) as E is (σ, λ)
    let mut inv = BTreeMap::new();
    for (i, nu) in parts.iter().enumerate() {
        let mut coeffs = Element::new();
        for (j, sigma) in parts.iter().enumerate() {
            let c = &rows[i][size + j];
            if !c.is_zero() {
                coeffs.insert(sigma.clone(), c.clone());
            }
        }
        inv.insert(nu.clone(), coeffs);
    }
    Ok(inv)
}

type InverseCache = Mutex<HashMap<(u32, Rational), Arc<BTreeMap<Partition, Element>>>>;

fn inverse_cache() -> &'static InverseCache {
    static CACHE: OnceLock<InverseCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_inverse(n: u32, q: &Rational) -> Result<Arc<BTreeMap<Partition, Element>>> {
    let key = (n, q.clone());
    if let Some(v) = inverse_cache().lock().expect("hall cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let v = Arc::new(inverse_basis_change(n, q)?);
    inverse_cache().lock().expect("hall cache poisoned").insert(key, v.clone());
    Ok(v)
}

/// The product `u_μ u_ν = Σ_λ G^λ_{μν}(q) u_λ` in the Hall algebra, where
/// `G^λ_{μν}(q)` counts submodules of type `ν` with quotient of type `μ`.
pub fn hall_product(mu: &Partition, nu: &Partition, q: &Rational) -> Result<BTreeMap<Partition, Rational>> {
    let inv = cached_inverse(nu.weight(), q)?;
    let start = Element::from([(mu.clone(), Rational::one())]);
    let mut out = Element::new();
    for (sigma, c) in &inv[nu] {
        for (lambda, v) in times_e(&start, sigma, q)? {
            let slot = out.entry(lambda).or_insert_with(Rational::zero);
            *slot += c * v;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `G^λ_{μν}(q)`.
pub fn hall_number(lambda: &Partition, mu: &Partition, nu: &Partition, q: &Rational) -> Result<Rational> {
    if lambda.weight() != mu.weight() + nu.weight() {
        return Ok(Rational::zero());
    }
    Ok(hall_product(mu, nu, q)?.remove(lambda).unwrap_or_else(Rational::zero))
}
