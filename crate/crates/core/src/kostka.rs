//! Kostka–Foulkes polynomials `K_{λμ}(t) = Σ_T t^{charge(T)}` over
//! semistandard tableaux of shape `λ` and weight `μ`, and the modified
//! `K̃_{λμ}(t) = t^{n(μ)} K_{λμ}(t^{-1})`.
//!
//! Tableaux are read in the usual way for charge: each row right to left,
//! starting from the top row. With that reading the unique tableau of shape
//! `(λ1, λ2)` and weight `(μ1, μ2)` has word `2^{λ1-μ1} 1^{μ1} 2^{λ2}`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPolynomial};
use crate::partitions::{dominance_leq, Partition};

/// A semistandard Young tableau in English notation (top row first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tableau {
    rows: Vec<Vec<u32>>,
}

impl Tableau {
    /// Validates row weak increase, column strict increase and that the
    /// content is a partition.
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidInput(format!("not a semistandard tableau: {msg}"));
        let rows: Vec<Vec<u32>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(bad("row lengths increase"));
        }
        for r in &rows {
            if r.contains(&0) {
                return Err(bad("entries must be positive"));
            }
            if r.windows(2).any(|w| w[0] > w[1]) {
                return Err(bad("row decreases"));
            }
        }
        for w in rows.windows(2) {
            if w[1].iter().zip(&w[0]).any(|(below, above)| below <= above) {
                return Err(bad("column not strictly increasing"));
            }
        }
        let t = Tableau { rows };
        let content = t.content();
        if content.windows(2).any(|w| w[0] < w[1]) || content.contains(&0) {
            return Err(bad("content is not a partition"));
        }
        Ok(t)
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::from_unsorted(self.rows.iter().map(|r| r.len() as u32).collect())
    }

    fn content(&self) -> Vec<u32> {
        let max = self.rows.iter().flatten().copied().max().unwrap_or(0);
        let mut c = vec![0u32; max as usize];
        for &x in self.rows.iter().flatten() {
            c[x as usize - 1] += 1;
        }
        c
    }

    pub fn weight(&self) -> Partition {
        Partition::new(self.content()).expect("validated on construction")
    }

    /// Rows read right to left, top row first.
    pub fn reading_word(&self) -> Vec<u32> {
        self.rows.iter().flat_map(|r| r.iter().rev().copied()).collect()
    }

    pub fn charge(&self) -> u64 {
        charge(&self.reading_word()).expect("tableau words have partition content")
    }
}

/// Charge of a word with partition content.
///
/// Standard subwords are extracted repeatedly: scanning rightwards
/// (cyclically) from the left end, pick the first 1, then the next 2, and
/// so on. Within a standard subword the letter 1 has index 0 and the index
/// grows by one each time the next letter lies to the left of its
/// predecessor, i.e. the scan had to wrap around. The charge is the sum of
/// all indices, so `c(12) = 0` and `c(21) = 1`.
pub fn charge(word: &[u32]) -> Result<u64> {
    let max = word.iter().copied().max().unwrap_or(0) as usize;
    let mut content = vec![0usize; max];
    for &x in word {
        if x == 0 {
            return Err(Error::NonPartitionContent(format!("{word:?} contains 0")));
        }
        content[x as usize - 1] += 1;
    }
    if content.windows(2).any(|w| w[0] < w[1]) || content.contains(&0) {
        return Err(Error::NonPartitionContent(format!("{word:?}")));
    }

    let mut remaining: Vec<u32> = word.to_vec();
    let mut total = 0u64;
    while !remaining.is_empty() {
        let top = remaining.iter().copied().max().unwrap_or(0);
        let n = remaining.len();
        let mut used = vec![false; n];
        // start just before the left end so the first step hits 0
        let mut pos: Option<usize> = None;
        let mut index = 0u64;
        for letter in 1..=top {
            let mut wrapped = false;
            let mut p = pos.map_or(0, |q| q + 1);
            loop {
                if p == n {
                    p = 0;
                    wrapped = true;
                }
                if !used[p] && remaining[p] == letter {
                    break;
                }
                p += 1;
            }
            if wrapped {
                index += 1;
            }
            total += index;
            used[p] = true;
            pos = Some(p);
        }
        remaining = remaining
            .into_iter()
            .zip(used)
            .filter_map(|(x, u)| (!u).then_some(x))
            .collect();
    }
    Ok(total)
}

/// All semistandard tableaux of the given shape and weight, built as chains
/// of horizontal strips: the cells holding letter `i` form a horizontal
/// strip of size `weight_i`.
pub fn semistandard_tableaux(shape: &Partition, weight: &Partition) -> Vec<Tableau> {
    if shape.weight() != weight.weight() {
        return Vec::new();
    }
    let rows = shape.len();
    let mut out = Vec::new();
    let mut filling: Vec<Vec<u32>> = vec![Vec::new(); rows];
    strips(shape, weight.parts(), 0, &mut filling, &mut out);
    out
}

fn strips(shape: &Partition, weight: &[u32], letter_idx: usize, filling: &mut Vec<Vec<u32>>, out: &mut Vec<Tableau>) {
    if letter_idx == weight.len() {
        out.push(Tableau { rows: filling.clone() });
        return;
    }
    let letter = letter_idx as u32 + 1;
    let current: Vec<u32> = filling.iter().map(|r| r.len() as u32).collect();
    let mut added = vec![0u32; filling.len()];
    place(shape, &current, 0, weight[letter_idx], &mut added, &mut |added| {
        for (r, &k) in added.iter().enumerate() {
            filling[r].extend(std::iter::repeat_n(letter, k as usize));
        }
        strips(shape, weight, letter_idx + 1, filling, out);
        for (r, &k) in added.iter().enumerate() {
            let len = filling[r].len() - k as usize;
            filling[r].truncate(len);
        }
    });
}

// Distributes `left` cells over rows `row..` so that the new cells form a
// horizontal strip inside `shape`: row r may grow up to the old length of
// row r-1 (no two new cells in one column).
fn place(
    shape: &Partition,
    current: &[u32],
    row: usize,
    left: u32,
    added: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if left == 0 {
        visit(added);
        return;
    }
    if row == current.len() {
        return;
    }
    let cap_shape = shape.part(row) - current[row];
    let cap_strip = if row == 0 { u32::MAX } else { current[row - 1] - current[row] };
    let cap = cap_shape.min(cap_strip).min(left);
    for k in (0..=cap).rev() {
        added[row] = k;
        place(shape, current, row + 1, left - k, added, visit);
    }
    added[row] = 0;
}

type Cache = Mutex<HashMap<(Partition, Partition), LaurentPolynomial>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `K_{λμ}(t)`; zero unless `|λ| = |μ|` and `λ ≥ μ`.
pub fn kostka_foulkes(lambda: &Partition, mu: &Partition) -> LaurentPolynomial {
    if lambda.weight() != mu.weight() {
        return LaurentPolynomial::zero();
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(p) = cache().lock().expect("kostka cache poisoned").get(&key) {
        return p.clone();
    }
    let mut poly = LaurentPolynomial::zero();
    for t in semistandard_tableaux(lambda, mu) {
        poly.add_term(t.charge() as i64, rat(1));
    }
    cache().lock().expect("kostka cache poisoned").insert(key, poly.clone());
    poly
}

/// `K̃_{λμ}(t) = t^{n(μ)} K_{λμ}(t^{-1})`.
pub fn kostka_tilde(lambda: &Partition, mu: &Partition) -> LaurentPolynomial {
    kostka_foulkes(lambda, mu).reverse_tilde(mu.n_stat() as i64)
}

/// Partitions `λ ≥ μ` of the same weight, in reverse-lexicographic order,
/// optionally restricted to at most `max_length` parts.
pub fn dominating(mu: &Partition, max_length: Option<usize>) -> Vec<Partition> {
    crate::partitions::enumerate_partitions(mu.weight(), max_length)
        .into_iter()
        .filter(|l| dominance_leq(mu, l).expect("same weight"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, part};

    fn p(parts: &[u32]) -> Partition {
        part(parts)
    }

    fn lp(terms: &[(i64, i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_ints(terms)
    }

    #[test]
    fn charge_anchor_values() {
        assert_eq!(charge(&[1]).unwrap(), 0);
        assert_eq!(charge(&[1, 2]).unwrap(), 0);
        assert_eq!(charge(&[2, 1]).unwrap(), 1);
        assert_eq!(charge(&[2, 1, 1, 2]).unwrap(), 1);
        assert_eq!(charge(&[]).unwrap(), 0);
    }

    #[test]
    fn charge_rejects_bad_content() {
        assert!(matches!(charge(&[2, 2, 1]), Err(Error::NonPartitionContent(_))));
        assert!(matches!(charge(&[2]), Err(Error::NonPartitionContent(_))));
        assert!(matches!(charge(&[0, 1]), Err(Error::NonPartitionContent(_))));
    }

    // Hand-computed charges of standard words (index rises when the next
    // letter sits to the left): 213 -> 0+1+1, 312 -> 0+0+1, 321 -> 0+1+2.
    #[test]
    fn charge_of_standard_words() {
        assert_eq!(charge(&[2, 1, 3]).unwrap(), 2);
        assert_eq!(charge(&[3, 1, 2]).unwrap(), 1);
        assert_eq!(charge(&[3, 2, 1]).unwrap(), 3);
        assert_eq!(charge(&[1, 2, 3]).unwrap(), 0);
    }

    #[test]
    fn kostka_examples() {
        assert_eq!(kostka_foulkes(&p(&[2]), &p(&[1, 1])), LaurentPolynomial::t());
        assert_eq!(kostka_foulkes(&p(&[3, 1]), &p(&[3, 1])), LaurentPolynomial::one());
        assert_eq!(kostka_foulkes(&p(&[2, 1]), &p(&[1, 1, 1])), lp(&[(1, 1), (2, 1)]));
        assert!(kostka_foulkes(&p(&[1, 1]), &p(&[2])).is_zero());
        assert!(kostka_foulkes(&p(&[2]), &p(&[1])).is_zero());
        // classical values
        assert_eq!(kostka_foulkes(&p(&[2, 2]), &p(&[1, 1, 1, 1])), lp(&[(2, 1), (4, 1)]));
        assert_eq!(kostka_foulkes(&p(&[3]), &p(&[1, 1, 1])), LaurentPolynomial::t_pow(3));
        assert_eq!(kostka_foulkes(&p(&[2, 1, 1]), &p(&[1, 1, 1, 1])), lp(&[(1, 1), (2, 1), (3, 1)]));
        assert_eq!(kostka_foulkes(&p(&[3, 1]), &p(&[1, 1, 1, 1])), lp(&[(3, 1), (4, 1), (5, 1)]));
        assert_eq!(kostka_foulkes(&p(&[4, 1]), &p(&[2, 2, 1])), lp(&[(2, 1), (3, 1)]));
        assert_eq!(kostka_foulkes(&p(&[3, 2]), &p(&[2, 2, 1])), lp(&[(1, 1), (2, 1)]));
    }

    #[test]
    fn kostka_tilde_examples() {
        for (m1, m2) in [(0u32, 1u32), (1, 1), (2, 3), (0, 4)] {
            let l = p(&[m1 + m2, m2]);
            assert_eq!(kostka_tilde(&l, &l), LaurentPolynomial::t_pow(m2 as i64));
        }
        assert_eq!(kostka_tilde(&p(&[2]), &p(&[1, 1])), LaurentPolynomial::one());
        assert_eq!(kostka_tilde(&p(&[3]), &p(&[2, 1])), LaurentPolynomial::one());
    }

    #[test]
    fn tableau_validation_and_reading() {
        let t = Tableau::new(vec![vec![1, 1, 2], vec![2]]).unwrap();
        assert_eq!(t.shape(), p(&[3, 1]));
        assert_eq!(t.weight(), p(&[2, 2]));
        assert_eq!(t.reading_word(), vec![2, 1, 1, 2]);
        assert!(Tableau::new(vec![vec![1, 2], vec![2]]).is_err());
        assert!(Tableau::new(vec![vec![2, 1]]).is_err());
        assert!(Tableau::new(vec![vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn enumerated_tableaux_are_semistandard() {
        for n in 1..=7 {
            let all = enumerate_partitions(n, None);
            for l in &all {
                for m in &all {
                    for t in semistandard_tableaux(l, m) {
                        let checked = Tableau::new(t.rows.clone()).unwrap();
                        assert_eq!(checked.shape(), *l);
                        assert_eq!(checked.weight(), *m);
                    }
                }
            }
        }
    }

    // Kostka numbers by brute force over all fillings with the given content.
    fn brute_force_kostka_number(shape: &Partition, weight: &Partition) -> usize {
        let cells: Vec<(usize, usize)> = shape
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
            .collect();
        let letters: Vec<u32> = weight
            .parts()
            .iter()
            .enumerate()
            .flat_map(|(i, &m)| std::iter::repeat_n(i as u32 + 1, m as usize))
            .collect();
        let mut perm = letters.clone();
        perm.sort();
        let mut seen = std::collections::HashSet::new();
        let mut count = 0;
        loop {
            if seen.insert(perm.clone()) {
                let mut rows: Vec<Vec<u32>> = shape.parts().iter().map(|_| Vec::new()).collect();
                for (&(r, _), &x) in cells.iter().zip(&perm) {
                    rows[r].push(x);
                }
                if Tableau::new(rows).is_ok() {
                    count += 1;
                }
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        count
    }

    fn next_permutation(v: &mut [u32]) -> bool {
        let n = v.len();
        if n < 2 {
            return false;
        }
        let mut i = n - 1;
        while i > 0 && v[i - 1] >= v[i] {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        let mut j = n - 1;
        while v[j] <= v[i - 1] {
            j -= 1;
        }
        v.swap(i - 1, j);
        v[i..].reverse();
        true
    }

    #[test]
    fn value_at_one_counts_tableaux() {
        for n in 1..=6 {
            let all = enumerate_partitions(n, None);
            for l in &all {
                for m in &all {
                    let k1 = kostka_foulkes(l, m).evaluate(&rat(1)).unwrap();
                    assert_eq!(k1, rat(brute_force_kostka_number(l, m) as i64), "{l} {m}");
                }
            }
        }
    }

    #[test]
    fn monic_nonnegative_with_expected_degree() {
        for n in 1..=8 {
            let all = enumerate_partitions(n, None);
            for l in &all {
                for m in &all {
                    let k = kostka_foulkes(l, m);
                    if dominance_leq(m, l).unwrap() {
                        assert!(k.has_nonneg_integer_coefficients());
                        assert_eq!(k.leading_coeff(), Some(&rat(1)), "{l} {m}");
                        assert_eq!(k.degree(), Some((m.n_stat() - l.n_stat()) as i64));
                        assert_eq!(kostka_tilde(l, m).valuation(), Some(l.n_stat() as i64));
                        assert!(kostka_tilde(l, m).degree().unwrap() <= m.n_stat() as i64);
                    } else {
                        assert!(k.is_zero(), "{l} {m}");
                    }
                }
            }
        }
    }

    fn one_minus_t_pow(k: i64) -> LaurentPolynomial {
        lp(&[(0, 1), (k, -1)])
    }

    // K_{λ,(1^n)}(t) = t^{n(λ')} (1-t)...(1-t^n) / prod over cells (1-t^hook)
    #[test]
    fn hook_formula_for_single_columns() {
        for n in 1..=7u32 {
            let cols = Partition::new(vec![1; n as usize]).unwrap();
            for l in enumerate_partitions(n, None) {
                let conj = l.conjugate();
                let mut num = LaurentPolynomial::t_pow(conj.n_stat() as i64);
                for k in 1..=n as i64 {
                    num = &num * &one_minus_t_pow(k);
                }
                let mut den = LaurentPolynomial::one();
                for (i, &row) in l.parts().iter().enumerate() {
                    for j in 0..row {
                        let hook = (row - j) + conj.part(j as usize) - i as u32 - 1;
                        den = &den * &one_minus_t_pow(hook as i64);
                    }
                }
                let (q, r) = num.div_rem_poly(&den).unwrap();
                assert!(r.is_zero());
                assert_eq!(kostka_foulkes(&l, &cols), q, "{l}");
            }
        }
    }

    #[test]
    fn length_two_rule() {
        for n in 0..=10 {
            let all = enumerate_partitions(n, Some(2));
            for l in &all {
                for m in &all {
                    if dominance_leq(m, l).unwrap() {
                        let e = (l.part(0) - m.part(0)) as i64;
                        assert_eq!(kostka_foulkes(l, m), LaurentPolynomial::t_pow(e));
                    }
                }
            }
        }
    }
}
