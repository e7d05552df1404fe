//! Integer partitions: construction, dominance order, the statistic
//! `n(λ) = Σ (i-1) λ_i`, multiplicities, multiset union and enumeration.
//!
//! A [`Partition`] is stored without trailing zeros, so the fixed-length
//! convention "length ≤ n" is recovered by zero padding where it is needed
//! (see [`Partition::padded`] and [`Partition::difference_vector`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, stripping trailing zeros. Fails if the parts are
    /// not weakly decreasing.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} has an interior zero"
            )));
        }
        Ok(Partition(parts))
    }

    /// Sorts arbitrary non-negative parts into a partition.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(n)`; empty when `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition(vec![n])
        }
    }

    /// The single-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The i-th part (0-based), zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn n_stat(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `m_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: u32) -> u32 {
        self.0.iter().filter(|&&p| p == i).count() as u32
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        let parts = (1..=first)
            .map(|k| self.0.iter().filter(|&&p| p >= k).count() as u32)
            .collect();
        Partition(parts)
    }

    /// `true` iff `self ≤ other` in dominance order. Errors when the weights
    /// differ, since the order is only defined within a weight class.
    pub fn dominated_by(&self, other: &Partition) -> Result<bool> {
        dominance_leq(self, other)
    }

    /// The multiset union `λ(μ, ν)`.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Partition::from_unsorted(parts)
    }

    /// Parts zero-padded to exactly `n` entries. Fails if the partition is
    /// longer than `n`.
    pub fn padded(&self, n: usize) -> Result<Vec<u32>> {
        if self.len() > n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: self.len(),
            });
        }
        let mut v = self.0.clone();
        v.resize(n, 0);
        Ok(v)
    }

    /// `(μ_1-μ_2, …, μ_{n-1}-μ_n, μ_n)` for the zero-padded partition.
    pub fn difference_vector(&self, n: usize) -> Result<Vec<u32>> {
        let p = self.padded(n)?;
        Ok((0..n)
            .map(|j| p[j] - p.get(j + 1).copied().unwrap_or(0))
            .collect())
    }

    /// Inverse of [`Partition::difference_vector`]: `μ_j = d_j + ⋯ + d_n`.
    pub fn from_difference_vector(d: &[u32]) -> Partition {
        let mut parts = vec![0u32; d.len()];
        let mut acc = 0;
        for j in (0..d.len()).rev() {
            acc += d[j];
            parts[j] = acc;
        }
        Partition::from_unsorted(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Comma-separated parts; the empty partition prints as the empty string.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// Parses `"2,1,1"`; `""`, `"0"` and `"()"` denote the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if trimmed.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("cannot parse {s:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Partition::new(parts)
    }
}

pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> Result<bool> {
    let (wm, wl) = (mu.weight(), lambda.weight());
    if wm != wl {
        return Err(Error::IncomparableWeights {
            left: wm,
            right: wl,
        });
    }
    let len = mu.len().max(lambda.len());
    let (mut sm, mut sl) = (0u32, 0u32);
    for k in 0..len {
        sm += mu.part(k);
        sl += lambda.part(k);
        if sl < sm {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn n_stat(lambda: &Partition) -> u64 {
    lambda.n_stat()
}

pub fn multiplicities(lambda: &Partition) -> BTreeMap<u32, u32> {
    lambda.multiplicities()
}

pub fn union_partition(mu: &Partition, nu: &Partition) -> Partition {
    mu.union(nu)
}

/// All partitions of `n` (with at most `max_length` parts when given), in
/// reverse-lexicographic order: `(4), (3,1), (2,2), (2,1,1), (1,1,1,1)`.
pub fn enumerate_partitions(n: u32, max_length: Option<usize>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill(n, n, max_length.unwrap_or(usize::MAX), &mut current, &mut out);
    out
}

fn fill(rest: u32, cap: u32, max_len: usize, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    if current.len() == max_len {
        return;
    }
    for p in (1..=cap.min(rest)).rev() {
        current.push(p);
        fill(rest - p, p, max_len, current, out);
        current.pop();
    }
}

/// Convenience constructor for literals in tests and examples.
///
/// Panics on a malformed partition.
pub fn part(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).expect("malformed partition literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        part(parts)
    }

    // Pentagonal-number recurrence for p(n), independent of the enumerator.
    fn partition_count(n: usize) -> u64 {
        let mut table = vec![0i64; n + 1];
        table[0] = 1;
        for i in 1..=n {
            let mut sum = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = (k * (3 * k - 1) / 2) as usize;
                if g1 > i {
                    break;
                }
                let sign = if k % 2 == 1 { 1 } else { -1 };
                sum += sign * table[i - g1];
                let g2 = (k * (3 * k + 1) / 2) as usize;
                if g2 <= i {
                    sum += sign * table[i - g2];
                }
                k += 1;
            }
            table[i] = sum;
        }
        table[n] as u64
    }

    #[test]
    fn normalization_strips_trailing_zeros() {
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), p(&[2, 1]));
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0, 1]).is_err());
        assert_eq!(Partition::new(vec![0]).unwrap(), Partition::empty());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1]), &p(&[2])).unwrap());
        assert!(dominance_leq(&p(&[2]), &p(&[2])).unwrap());
        assert!(!dominance_leq(&p(&[3]), &p(&[2, 1])).unwrap());
        assert_eq!(
            dominance_leq(&p(&[3]), &p(&[2])),
            Err(Error::IncomparableWeights { left: 3, right: 2 })
        );
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(n_stat(&Partition::empty()), 0);
        assert_eq!(n_stat(&p(&[2])), 0);
        assert_eq!(n_stat(&p(&[1, 1])), 1);
        assert_eq!(n_stat(&p(&[2, 1, 1])), 3);
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(multiplicities(&p(&[2, 1, 1])), BTreeMap::from([(1, 2), (2, 1)]));
        assert_eq!(multiplicities(&p(&[3])), BTreeMap::from([(3, 1)]));
        assert!(multiplicities(&Partition::empty()).is_empty());
    }

    #[test]
    fn union_examples() {
        assert_eq!(union_partition(&p(&[2, 1]), &p(&[1])), p(&[2, 1, 1]));
        assert_eq!(union_partition(&Partition::empty(), &p(&[3])), p(&[3]));
        assert_eq!(union_partition(&p(&[2, 2]), &p(&[2])), p(&[2, 2, 2]));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(enumerate_partitions(0, None), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(5, None).len(), 7);
        assert_eq!(
            enumerate_partitions(4, Some(2)),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2])]
        );
        assert_eq!(
            enumerate_partitions(4, None),
            vec![p(&[4]), p(&[3, 1]), p(&[2, 2]), p(&[2, 1, 1]), p(&[1, 1, 1, 1])]
        );
    }

    #[test]
    fn enumeration_matches_pentagonal_recurrence() {
        for n in 0..=15u32 {
            let all = enumerate_partitions(n, None);
            assert_eq!(all.len() as u64, partition_count(n as usize), "n = {n}");
            let mut dedup = all.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), all.len());
            assert!(all.iter().all(|l| l.weight() == n));
            // strictly decreasing in lexicographic order
            assert!(all.windows(2).all(|w| w[0] > w[1]));
        }
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for n in 0..=8 {
            let all = enumerate_partitions(n, None);
            for a in &all {
                assert!(dominance_leq(a, a).unwrap());
                for b in &all {
                    let ab = dominance_leq(a, b).unwrap();
                    let ba = dominance_leq(b, a).unwrap();
                    if ab && ba {
                        assert_eq!(a, b);
                    }
                    if ab {
                        // n is antitone along dominance
                        assert!(b.n_stat() <= a.n_stat());
                    }
                    for c in &all {
                        if ab && dominance_leq(b, c).unwrap() {
                            assert!(dominance_leq(a, c).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn union_adds_weights_and_multiplicities() {
        for a in enumerate_partitions(4, None) {
            for b in enumerate_partitions(3, None) {
                let u = a.union(&b);
                assert_eq!(u.weight(), 7);
                for i in 1..=4 {
                    assert_eq!(u.multiplicity(i), a.multiplicity(i) + b.multiplicity(i));
                }
            }
        }
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=8 {
            for l in enumerate_partitions(n, None) {
                assert_eq!(l.conjugate().conjugate(), l);
                assert_eq!(l.conjugate().weight(), n);
            }
        }
    }

    #[test]
    fn difference_vector_round_trip() {
        let mu = p(&[3, 1]);
        assert_eq!(mu.difference_vector(3).unwrap(), vec![2, 1, 0]);
        assert_eq!(Partition::from_difference_vector(&[2, 1, 0]), mu);
        assert_eq!(Partition::from_difference_vector(&[0, 1]), p(&[1, 1]));
        assert!(p(&[1, 1, 1]).difference_vector(2).is_err());
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("2,1,1".parse::<Partition>().unwrap(), p(&[2, 1, 1]));
        assert_eq!("".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert_eq!(p(&[3, 1]).to_string(), "3,1");
        assert!("1,2".parse::<Partition>().is_err());
    }

    #[test]
    fn json_is_an_integer_array() {
        assert_eq!(serde_json::to_string(&p(&[2, 1, 1])).unwrap(), "[2,1,1]");
        let back: Partition = serde_json::from_str("[2,1,1]").unwrap();
        assert_eq!(back, p(&[2, 1, 1]));
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
