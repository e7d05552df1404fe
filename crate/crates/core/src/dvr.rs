//! Elementary divisors of a bordered diagonal matrix over a discrete
//! valuation ring with uniformizer `ϖ`.
//!
//! The matrix has first column `ϖ^{a_1}, …, ϖ^{a_N}`, diagonal
//! `ϖ^{D_2}, …, ϖ^{D_N}` below the corner, where `D_j = d_j + ⋯ + d_N`,
//! and zeros elsewhere. Indices run from 1 to `N` throughout.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPolynomial, Rational};

/// Largest matrix the minor oracle accepts.
pub const MAX_ORACLE_SIZE: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ValuationMatrixSpec {
    a: Vec<u32>,
    d: Vec<u32>,
}

impl ValuationMatrixSpec {
    /// Checks shapes only. `a[j] > D_j` is allowed; such an entry is
    /// equivalent to zero and the closed form reduces it first.
    pub fn new(a: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidInput("a must have at least one entry".into()));
        }
        if d.len() + 1 != a.len() {
            return Err(Error::LengthMismatch {
                expected: a.len() - 1,
                found: d.len(),
            });
        }
        Ok(ValuationMatrixSpec { a, d })
    }

    /// As [`ValuationMatrixSpec::new`], but also requires `a_j ≤ D_j` for `j ≥ 2`.
    pub fn strict(a: Vec<u32>, d: Vec<u32>) -> Result<Self> {
        let spec = Self::new(a, d)?;
        if let Some(j) = spec.bound_violation() {
            return Err(Error::InvariantViolation(format!(
                "a_{} = {} exceeds d_{}+...+d_{} = {}",
                j + 1,
                spec.a[j],
                j + 1,
                spec.size(),
                spec.tail(j)
            )));
        }
        Ok(spec)
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn d(&self) -> &[u32] {
        &self.d
    }

    pub fn size(&self) -> usize {
        self.a.len()
    }

    // d_m for m = 2..=N, stored at d[m - 2]; zero-based row j ≥ 1 holds d_{j+1}
    fn d_at(&self, m: usize) -> u64 {
        self.d[m - 2] as u64
    }

    /// `D_{j+1}` for zero-based row `j ≥ 1`.
    fn tail(&self, j: usize) -> u64 {
        self.d[j - 1..].iter().map(|&x| x as u64).sum()
    }

    fn bound_violation(&self) -> Option<usize> {
        (1..self.size()).find(|&j| self.a[j] as u64 > self.tail(j))
    }

    pub fn within_bound(&self) -> bool {
        self.bound_violation().is_none()
    }
}

/// A matrix over the local ring; `None` is zero, `Some((v, u))` is `u ϖ^v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DvrMatrix {
    entries: Vec<Vec<Option<(u32, Rational)>>>,
}

impl DvrMatrix {
    pub fn new(entries: Vec<Vec<Option<(u32, Rational)>>>) -> Result<Self> {
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.is_empty() || cols == 0 {
            return Err(Error::InvalidInput("matrix must be nonempty".into()));
        }
        if let Some(r) = entries.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        if entries.iter().flatten().flatten().any(|(_, u)| u == &rat(0)) {
            return Err(Error::InvalidInput("units must be nonzero".into()));
        }
        Ok(DvrMatrix { entries })
    }

    /// Builds a matrix of `ϖ`-powers with unit 1; `None` is zero.
    pub fn from_valuations(vals: &[Vec<Option<u32>>]) -> Result<Self> {
        Self::new(
            vals.iter()
                .map(|r| r.iter().map(|v| v.map(|v| (v, rat(1)))).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&(u32, Rational)> {
        self.entries[i][j].as_ref()
    }

    /// Valuations only, `None` for zero entries.
    pub fn valuations(&self) -> Vec<Vec<Option<u32>>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|e| e.as_ref().map(|(v, _)| *v)).collect())
            .collect()
    }

    fn as_polynomials(&self) -> Vec<Vec<LaurentPolynomial>> {
        self.entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| match e {
                        None => LaurentPolynomial::zero(),
                        Some((v, u)) => LaurentPolynomial::monomial(u.clone(), *v as i64),
                    })
                    .collect()
            })
            .collect()
    }
}

pub fn build_matrix(spec: &ValuationMatrixSpec) -> DvrMatrix {
    let n = spec.size();
    let mut entries = vec![vec![None; n]; n];
    for (j, row) in entries.iter_mut().enumerate() {
        row[0] = Some((spec.a[j], rat(1)));
        if j > 0 {
            row[j] = Some((spec.tail(j) as u32, rat(1)));
        }
    }
    DvrMatrix { entries }
}

fn det(m: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    match m.len() {
        0 => LaurentPolynomial::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = LaurentPolynomial::zero();
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<LaurentPolynomial>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, x)| x.clone()).collect())
                    .collect();
                let term = &m[0][c] * &det(&minor);
                acc = if c % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Smallest `ϖ`-valuation among the nonzero `k × k` minors, `None` if all vanish.
pub fn min_minor_valuation(m: &DvrMatrix, k: usize) -> Result<Option<u32>> {
    if m.rows().max(m.cols()) > MAX_ORACLE_SIZE {
        return Err(Error::TooLarge(format!(
            "minor oracle supports at most {MAX_ORACLE_SIZE} rows and columns"
        )));
    }
    let p = m.as_polynomials();
    let mut best: Option<i64> = None;
    for rs in subsets(m.rows(), k) {
        for cs in subsets(m.cols(), k) {
            let sub: Vec<Vec<LaurentPolynomial>> =
                rs.iter().map(|&r| cs.iter().map(|&c| p[r][c].clone()).collect()).collect();
            if let Some(v) = det(&sub).valuation() {
                best = Some(best.map_or(v, |b| b.min(v)));
            }
        }
    }
    Ok(best.map(|v| v as u32))
}

/// Elementary divisor valuations in increasing order, from the gaps between
/// successive minimal minor valuations. Entries past the rank are `None`.
pub fn smith_valuations(m: &DvrMatrix) -> Result<Vec<Option<u32>>> {
    let mut out = Vec::new();
    let mut prev = Some(0u32);
    for k in 1..=m.rows().min(m.cols()) {
        let cur = min_minor_valuation(m, k)?;
        out.push(match (prev, cur) {
            (Some(p), Some(c)) => Some(c - p),
            _ => None,
        });
        prev = cur;
    }
    Ok(out)
}

/// The sequence `(d'_1, …, d'_N)` from the closed Inf-formulas. The
/// divisors are `ϖ^{d'_N} | ϖ^{d'_{N-1}+d'_N} | ⋯ | ϖ^{d'_1+⋯+d'_N}`.
pub fn elementary_divisors_closed(spec: &ValuationMatrixSpec) -> Result<Vec<u32>> {
    let n = spec.size();
    // reduce entries at or above their diagonal partner; they clear to zero
    let a: Vec<u64> = (0..n)
        .map(|j| if j == 0 { spec.a[0] as u64 } else { (spec.a[j] as u64).min(spec.tail(j)) })
        .collect();
    // Σ_{m ≥ from} (m - from + 1) d_m, one-based m
    let weighted = |from: usize| -> i64 {
        (from.max(2)..=n)
            .map(|m| (m as i64 - from as i64 + 1) * spec.d_at(m) as i64)
            .sum()
    };
    // w[j - 1] = d'_j + 2 d'_{j+1} + ⋯ + (N - j + 1) d'_N
    let mut w = vec![0i64; n + 1];
    w[0] = a[0] as i64 + weighted(2);
    for j in 2..=n {
        let first = (1..=j).map(|k| a[k - 1] as i64 + weighted(j + 1));
        let second = (j + 1..=n).map(|l| a[l - 1] as i64 + weighted(j) - spec.tail(l - 1) as i64);
        w[j - 1] = first.chain(second).min().expect("k = j is always present");
    }
    // D'_j = w_j - w_{j+1}, d'_j = D'_j - D'_{j+1}
    let big_d: Vec<i64> = (0..n).map(|j| w[j] - w[j + 1]).collect();
    let out: Vec<i64> = (0..n).map(|j| big_d[j] - big_d.get(j + 1).copied().unwrap_or(0)).collect();
    out.iter()
        .map(|&x| {
            u32::try_from(x).map_err(|_| {
                Error::InternalConsistency(format!("negative elementary divisor data {out:?} for {spec:?}"))
            })
        })
        .collect()
}

/// The divisor valuations implied by the closed form, in increasing order.
pub fn closed_smith_valuations(spec: &ValuationMatrixSpec) -> Result<Vec<u32>> {
    let dp = elementary_divisors_closed(spec)?;
    let mut acc = 0;
    let mut out: Vec<u32> = dp
        .iter()
        .rev()
        .map(|&x| {
            acc += x;
            acc
        })
        .collect();
    out.truncate(spec.size());
    Ok(out)
}

/// Applies the closed form place by place. Each input maps a place to its
/// multiplicity; missing places count as zero.
pub fn elementary_divisors_by_place(
    a: &[BTreeMap<String, u32>],
    d: &[BTreeMap<String, u32>],
) -> Result<Vec<BTreeMap<String, u32>>> {
    let places: std::collections::BTreeSet<&String> = a.iter().chain(d).flat_map(|m| m.keys()).collect();
    let mut out = vec![BTreeMap::new(); a.len()];
    for place in places {
        let at = |m: &BTreeMap<String, u32>| m.get(place).copied().unwrap_or(0);
        let spec = ValuationMatrixSpec::new(a.iter().map(at).collect(), d.iter().map(at).collect())?;
        for (slot, v) in out.iter_mut().zip(elementary_divisors_closed(&spec)?) {
            if v > 0 {
                slot.insert(place.clone(), v);
            }
        }
    }
    Ok(out)
}

/// A spec of size `1..=max_size` with entries `≤ max_val` satisfying `a_j ≤ D_j`.
pub fn random_spec<R: Rng>(rng: &mut R, max_size: usize, max_val: u32) -> ValuationMatrixSpec {
    let n = rng.gen_range(1..=max_size.max(1));
    let d: Vec<u32> = (1..n).map(|_| rng.gen_range(0..=max_val)).collect();
    let mut a = vec![rng.gen_range(0..=max_val)];
    for j in 1..n {
        let cap = d[j - 1..].iter().sum::<u32>().min(max_val);
        a.push(rng.gen_range(0..=cap));
    }
    ValuationMatrixSpec { a, d }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfComparison {
    pub a: Vec<u32>,
    pub d: Vec<u32>,
    pub closed: Vec<u32>,
    pub closed_valuations: Vec<u32>,
    /// `null` entries are infinite valuations.
    pub oracle_valuations: Vec<Option<u32>>,
    pub within_bound: bool,
    pub equal: bool,
}

pub fn compare(spec: &ValuationMatrixSpec) -> Result<SnfComparison> {
    let closed = elementary_divisors_closed(spec)?;
    let closed_valuations = closed_smith_valuations(spec)?;
    let oracle_valuations = smith_valuations(&build_matrix(spec))?;
    let equal = closed_valuations.iter().map(|&v| Some(v)).eq(oracle_valuations.iter().copied());
    Ok(SnfComparison {
        a: spec.a.clone(),
        d: spec.d.clone(),
        closed,
        closed_valuations,
        oracle_valuations,
        within_bound: spec.within_bound(),
        equal,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzReport {
    pub count: usize,
    pub seed: u64,
    pub max_size: usize,
    pub max_val: u32,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<SnfComparison>,
}

/// Compares closed form and oracle on `count` seeded in-bound specs.
pub fn fuzz(count: usize, seed: u64, max_size: usize, max_val: u32) -> Result<FuzzReport> {
    if max_size == 0 || max_size > MAX_ORACLE_SIZE {
        return Err(Error::TooLarge(format!("matrix size must lie in 1..={MAX_ORACLE_SIZE}")));
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for _ in 0..count {
        let c = compare(&random_spec(&mut rng, max_size, max_val))?;
        if !c.equal {
            failures.push(c);
        }
    }
    Ok(FuzzReport {
        count,
        seed,
        max_size,
        max_val,
        passed: count - failures.len(),
        failed: failures.len(),
        failures,
    })
}

/// Renders a valuation-matrix as rows like `[1, 0; ϖ^5, ϖ^3]`.
pub fn render(m: &DvrMatrix) -> String {
    let rows: Vec<String> = m
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| match e {
                    None => "0".to_string(),
                    Some((0, u)) => u.to_string(),
                    Some((v, u)) if u == &rat(1) => format!("ϖ^{v}"),
                    Some((v, u)) => format!("{u}ϖ^{v}"),
                })
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    format!("[{}]", rows.join("; "))
}
