//! Green polynomials, Schur functions at Frobenius eigenvalues, and the
//! local and global Whittaker trace functions.
//!
//! A rank-`n` local system is modelled only by its Frobenius eigenvalues
//! `α_1, …, α_n` at each place. The trace of Frobenius on the irreducible
//! representation of highest weight `λ` is then the Schur polynomial
//! `s_λ(α)`.
//!
//! The local function is
//! `w_{L,x}(μ_1 - μ_2, …, μ_n) = Σ_{λ ≥ μ} K̃_{λμ}(q_x) s_λ(α)`.
//! Note that the sum uses the modified polynomials `K̃_{λμ}`, not `K_{λμ}`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::characters::{irreducible_character, ClassFunction};
use crate::error::{Error, Result};
use crate::exact::rational::pow_i;
use crate::exact::{rat, to_exact_string, RationalFunction, Rational};
use crate::kostka::{dominating, kostka_tilde};
use crate::numbers::{determinant, is_prime_power};
use crate::partitions::Partition;

/// A closed point with its degree and the Frobenius eigenvalues there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    id: String,
    degree: u32,
    eigenvalues: Vec<Rational>,
}

impl Place {
    pub fn new(id: impl Into<String>, degree: u32, eigenvalues: Vec<Rational>) -> Result<Self> {
        let id = id.into();
        if degree == 0 {
            return Err(Error::InvalidInput(format!("place {id}: degree must be positive")));
        }
        if eigenvalues.iter().any(Zero::is_zero) {
            return Err(Error::ZeroEigenvalue);
        }
        Ok(Place { id, degree, eigenvalues })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eigenvalues(&self) -> &[Rational] {
        &self.eigenvalues
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Place", 3)?;
        st.serialize_field("id", &self.id)?;
        st.serialize_field("degree", &self.degree)?;
        let ev: Vec<String> = self.eigenvalues.iter().map(to_exact_string).collect();
        st.serialize_field("eigenvalues", &ev)?;
        st.end()
    }
}

/// Frobenius data of a rank-`n` local system over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSystemSpec {
    rank: usize,
    q: u64,
    places: Vec<Place>,
}

impl LocalSystemSpec {
    pub fn new(rank: usize, q: u64, places: Vec<Place>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("rank must be at least 1".into()));
        }
        if !is_prime_power(q) {
            return Err(Error::NotPrimePower(q));
        }
        let mut seen = BTreeSet::new();
        for p in &places {
            if !seen.insert(p.id.as_str()) {
                return Err(Error::InvalidInput(format!("duplicate place id {}", p.id)));
            }
            if p.eigenvalues.len() != rank {
                return Err(Error::LengthMismatch {
                    expected: rank,
                    found: p.eigenvalues.len(),
                });
            }
        }
        Ok(LocalSystemSpec { rank, q, places })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn place(&self, id: &str) -> Result<&Place> {
        self.places
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| Error::UnknownPlace(id.to_string()))
    }

    /// `q_x = q^{deg(x)}`.
    pub fn q_at(&self, place: &Place) -> Rational {
        pow_i(&rat(self.q as i64), place.degree as i64).expect("positive base")
    }
}

/// Multiplicities `(d_1, …, d_n)` of the divisors `D_1, …, D_n` at each
/// place; places not listed contribute zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct DivisorTuple(BTreeMap<String, Vec<u32>>);

impl DivisorTuple {
    pub fn new(entries: BTreeMap<String, Vec<u32>>) -> Self {
        DivisorTuple(entries)
    }

    pub fn entries(&self) -> &BTreeMap<String, Vec<u32>> {
        &self.0
    }

    /// Checks that every id names a place of `spec` and has `rank` entries.
    pub fn validate(&self, spec: &LocalSystemSpec) -> Result<()> {
        for (id, d) in &self.0 {
            spec.place(id)?;
            if d.len() != spec.rank {
                return Err(Error::LengthMismatch {
                    expected: spec.rank,
                    found: d.len(),
                });
            }
        }
        Ok(())
    }
}

/// Complete homogeneous symmetric polynomials `h_0, …, h_k` at `alpha`.
fn complete_homogeneous(alpha: &[Rational], k: usize) -> Vec<Rational> {
    let mut h = vec![Rational::zero(); k + 1];
    h[0] = rat(1);
    // adding one variable x: h_j <- Σ_{i ≤ j} x^{j-i} h_i
    for x in alpha {
        for j in 1..=k {
            let prev = h[j - 1].clone();
            h[j] += x * prev;
        }
    }
    h
}

/// `s_λ(α)` via the Jacobi–Trudi determinant `det(h_{λ_i - i + j})`; zero
/// when `λ` has more parts than there are variables.
pub fn schur_eval(lambda: &Partition, alpha: &[Rational]) -> Rational {
    if lambda.len() > alpha.len() {
        return Rational::zero();
    }
    let l = lambda.len();
    let top = lambda.part(0) as usize + l;
    let h = complete_homogeneous(alpha, top);
    let matrix = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| {
                    let idx = lambda.part(i) as i64 - i as i64 + j as i64;
                    if idx < 0 {
                        Rational::zero()
                    } else {
                        h[idx as usize].clone()
                    }
                })
                .collect()
        })
        .collect();
    determinant(matrix)
}

/// `Q^λ(t) = Σ_{λ' ≥ λ} K̃_{λ'λ}(t) χ^{λ'}`.
pub fn green_polynomial(lambda: &Partition) -> ClassFunction {
    let mut acc = ClassFunction::zero(lambda.weight());
    for big in dominating(lambda, None) {
        let k = RationalFunction::from(kostka_tilde(&big, lambda));
        let term = irreducible_character(&big).scale(&k);
        acc = acc.add(&term).expect("same degree");
    }
    acc
}

/// `X^λ(t) = t^{n(λ)} Q^λ(t^{-1})`, applied valuewise.
pub fn x_polynomial(lambda: &Partition) -> ClassFunction {
    let shift = lambda.n_stat() as i64;
    green_polynomial(lambda).map(|v| v.reverse_tilde(shift))
}

/// `Σ_{λ ≥ μ} K̃_{λμ}(q_x) s_λ(α)` for a partition `μ` of any length.
/// Terms with `ℓ(λ) > len(α)` vanish.
pub fn whittaker_at_partition(mu: &Partition, alpha: &[Rational], q_x: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for lambda in dominating(mu, Some(alpha.len())) {
        let k = kostka_tilde(&lambda, mu).evaluate(q_x)?;
        acc += k * schur_eval(&lambda, alpha);
    }
    Ok(acc)
}

fn partition_from_d(alpha: &[Rational], d: &[u32]) -> Result<Partition> {
    if d.len() != alpha.len() {
        return Err(Error::LengthMismatch {
            expected: alpha.len(),
            found: d.len(),
        });
    }
    Ok(Partition::from_difference_vector(d))
}

/// `w_{L,x}(d)` with `μ_j = d_j + ⋯ + d_n`.
pub fn whittaker_local(place: &Place, q_x: &Rational, d: &[u32]) -> Result<Rational> {
    whittaker_local_at(place.eigenvalues(), q_x, d)
}

/// [`whittaker_local`] for a bare eigenvalue tuple.
pub fn whittaker_local_at(alpha: &[Rational], q_x: &Rational, d: &[u32]) -> Result<Rational> {
    let mu = partition_from_d(alpha, d)?;
    whittaker_at_partition(&mu, alpha, q_x)
}

/// `w^top_{L,x}(d) = q_x^{n(μ)} s_μ(α)`.
pub fn whittaker_local_top(place: &Place, q_x: &Rational, d: &[u32]) -> Result<Rational> {
    let alpha = place.eigenvalues();
    let mu = partition_from_d(alpha, d)?;
    Ok(pow_i(q_x, mu.n_stat() as i64)? * schur_eval(&mu, alpha))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WhittakerMode {
    Plain,
    Top,
}

/// Product over places of the local values, with `q_x = q^{deg(x)}`.
pub fn whittaker_global(spec: &LocalSystemSpec, divisors: &DivisorTuple, mode: WhittakerMode) -> Result<Rational> {
    divisors.validate(spec)?;
    let mut acc = rat(1);
    for (id, d) in divisors.entries() {
        if d.iter().all(|&x| x == 0) {
            continue;
        }
        let place = spec.place(id)?;
        let q_x = spec.q_at(place);
        acc *= match mode {
            WhittakerMode::Plain => whittaker_local(place, &q_x, d)?,
            WhittakerMode::Top => whittaker_local_top(place, &q_x, d)?,
        };
    }
    Ok(acc)
}
