//! Exhaustive enumeration over finite modules `⊕_i F_q[T]/(T^{λ_i})`.
//!
//! A module of type `λ` is stored through its `F_q`-basis `T^j e_i`
//! (`j < λ_i`); `T` shifts `T^j e_i` to `T^{j+1} e_i` or to zero. Submodules
//! are the `T`-stable subspaces, kept in reduced row echelon form so that
//! equal subspaces have equal keys.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use super::field::FiniteField;
use crate::error::{Error, Result};
use crate::partitions::Partition;

/// Largest module weight and residue field accepted by the enumerations.
pub const MAX_WEIGHT: u32 = 6;
pub const MAX_Q: u64 = 9;
const WORK_BUDGET: u64 = 60_000_000;

pub(crate) struct ModuleSpace {
    field: FiniteField,
    /// `shift[b]` is the basis index of `T·b`, if nonzero.
    shift: Vec<Option<usize>>,
    /// `(generator, exponent)` of each basis index.
    label: Vec<(usize, u32)>,
}

impl ModuleSpace {
    pub(crate) fn new(kind: &Partition, field: FiniteField) -> Self {
        let mut label = Vec::new();
        for (i, &len) in kind.parts().iter().enumerate() {
            for j in 0..len {
                label.push((i, j));
            }
        }
        let shift = label
            .iter()
            .map(|&(i, j)| label.iter().position(|&l| l == (i, j + 1)))
            .collect();
        ModuleSpace { field, shift, label }
    }

    pub(crate) fn dim(&self) -> usize {
        self.label.len()
    }

    fn apply_t(&self, v: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; v.len()];
        for (b, &c) in v.iter().enumerate() {
            if let (Some(to), true) = (self.shift[b], c != 0) {
                out[to] = c;
            }
        }
        out
    }

    fn apply_t_pow(&self, v: &[u8], k: u32) -> Vec<u8> {
        (0..k).fold(v.to_vec(), |acc, _| self.apply_t(&acc))
    }

    fn unit(&self, b: usize) -> Vec<u8> {
        let mut v = vec![0u8; self.dim()];
        v[b] = 1;
        v
    }
}

/// Subspace in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Subspace {
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub(crate) fn zero() -> Self {
        Subspace {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, f: &FiniteField, v: &[u8]) -> Vec<u8> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(row) {
                    *x = f.sub(*x, f.mul(c, r));
                }
            }
        }
        v
    }

    fn contains(&self, f: &FiniteField, v: &[u8]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Span of `self` and `v`, still in reduced echelon form.
    pub(crate) fn with(&self, f: &FiniteField, v: &[u8]) -> Self {
        let mut r = self.reduce(f, v);
        let Some(p) = r.iter().position(|&x| x != 0) else {
            return self.clone();
        };
        let s = f.inv(r[p]);
        for x in r.iter_mut() {
            *x = f.mul(*x, s);
        }
        let mut rows = Vec::with_capacity(self.rows.len() + 1);
        for row in &self.rows {
            let c = row[p];
            if c == 0 {
                rows.push(row.clone());
            } else {
                rows.push(row.iter().zip(&r).map(|(&a, &b)| f.sub(a, f.mul(c, b))).collect());
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        rows.insert(at, r);
        let mut pivots = self.pivots.clone();
        pivots.insert(at, p);
        Subspace { rows, pivots }
    }

    fn span(f: &FiniteField, vs: impl IntoIterator<Item = Vec<u8>>) -> Self {
        vs.into_iter().fold(Subspace::zero(), |s, v| s.with(f, &v))
    }
}

/// Iterates all vectors of `F_q^dim` whose first nonzero entry is 1 and
/// whose entries vanish on `skip`, i.e. projective representatives of a
/// complement of the given pivot columns.
fn normalized_vectors(q: usize, dim: usize, skip: &[usize]) -> Vec<Vec<u8>> {
    let free: Vec<usize> = (0..dim).filter(|c| !skip.contains(c)).collect();
    let mut out = Vec::new();
    for (lead, &col) in free.iter().enumerate() {
        let tail = &free[lead + 1..];
        let count = q.pow(tail.len() as u32);
        for code in 0..count {
            let mut v = vec![0u8; dim];
            v[col] = 1;
            let mut x = code;
            for &c in tail {
                v[c] = (x % q) as u8;
                x /= q;
            }
            out.push(v);
        }
    }
    out
}

pub(crate) fn check_scale(kind: &Partition, q: u64) -> Result<()> {
    if kind.weight() > MAX_WEIGHT || q > MAX_Q {
        return Err(Error::TooLarge(format!(
            "brute force supports |lambda| <= {MAX_WEIGHT} and q <= {MAX_Q}, got |lambda| = {}, q = {q}",
            kind.weight()
        )));
    }
    Ok(())
}

/// Number of submodules of the type-`λ` module over `F_q[T]`, keyed by
/// `(submodule type, quotient type)`.
pub type Census = BTreeMap<(Partition, Partition), u64>;

type CensusCache = Mutex<HashMap<(Partition, u64), Arc<Census>>>;

fn census_cache() -> &'static CensusCache {
    static CACHE: OnceLock<CensusCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Enumerates every submodule of the type-`λ` module with residue field
/// `F_q` and records its type and cotype.
///
/// Submodules are grown one dimension at a time: every nonzero submodule
/// `N'` contains some `N` of codimension one with `N' = N + F_q x` and
/// `T x ∈ N`, so adding such vectors layer by layer reaches all of them.
pub fn submodule_census(kind: &Partition, q: u64) -> Result<Arc<Census>> {
    check_scale(kind, q)?;
    let key = (kind.clone(), q);
    if let Some(c) = census_cache().lock().expect("census cache poisoned").get(&key) {
        return Ok(c.clone());
    }
    let field = FiniteField::new(q)?;
    let space = ModuleSpace::new(kind, field);
    let f = &space.field;
    let dim = space.dim();
    let mut census = Census::new();
    let mut layer: HashSet<Subspace> = HashSet::from([Subspace::zero()]);
    let mut work = 0u64;
    for _ in 0..=dim {
        for n in &layer {
            let entry = census.entry(classify(&space, n)).or_insert(0);
            *entry += 1;
        }
        let mut next = HashSet::new();
        for n in &layer {
            let candidates = normalized_vectors(q as usize, dim, &n.pivots);
            work += candidates.len() as u64;
            if work > WORK_BUDGET {
                return Err(Error::TooLarge(format!("submodule enumeration of {kind} over F_{q}")));
            }
            for x in candidates {
                if n.contains(f, &space.apply_t(&x)) {
                    next.insert(n.with(f, &x));
                }
            }
        }
        layer = next;
    }
    let census = Arc::new(census);
    census_cache()
        .lock()
        .expect("census cache poisoned")
        .insert(key, census.clone());
    Ok(census)
}

/// Partition whose conjugate has parts `r_{k-1} - r_k`, from the chain of
/// dimensions `r_k = dim T^k(·)`.
fn type_from_ranks(ranks: &[usize]) -> Partition {
    let conj: Vec<u32> = ranks.windows(2).map(|w| (w[0] - w[1]) as u32).collect();
    Partition::new(conj)
        .expect("rank drops of a nilpotent operator decrease")
        .conjugate()
}

fn classify(space: &ModuleSpace, n: &Subspace) -> (Partition, Partition) {
    let f = &space.field;
    let height = space.label.iter().map(|&(_, j)| j + 1).max().unwrap_or(0);
    let mut sub_ranks = Vec::new();
    let mut quot_ranks = Vec::new();
    for k in 0..=height {
        let image = Subspace::span(f, n.rows.iter().map(|r| space.apply_t_pow(r, k)));
        sub_ranks.push(image.dim());
        let tk_m = (0..space.dim()).filter(|&b| space.label[b].1 >= k).map(|b| space.unit(b));
        let with_n = tk_m.chain(n.rows.iter().cloned());
        quot_ranks.push(Subspace::span(f, with_n).dim() - n.dim());
    }
    (type_from_ranks(&sub_ranks), type_from_ranks(&quot_ranks))
}

/// Number of submodules of type `sub` with quotient of type `quotient`
/// inside the type-`λ` module over `F_q[T]`.
pub fn count_submodules(lambda: &Partition, sub: &Partition, quotient: &Partition, q: u64) -> Result<u64> {
    if lambda.weight() != sub.weight() + quotient.weight() {
        return Ok(0);
    }
    let census = submodule_census(lambda, q)?;
    Ok(census.get(&(sub.clone(), quotient.clone())).copied().unwrap_or(0))
}

fn annihilated(space: &ModuleSpace, order: u32) -> Vec<Vec<u8>> {
    let q = space.field.size();
    let dim = space.dim();
    let mut out = Vec::new();
    for code in 0..q.pow(dim as u32) {
        let mut v = vec![0u8; dim];
        let mut x = code;
        for slot in v.iter_mut() {
            *slot = (x % q) as u8;
            x /= q;
        }
        if space.apply_t_pow(&v, order).iter().all(|&c| c == 0) {
            out.push(v);
        }
    }
    out
}

/// `|Hom(N, M)|` for `N` of type `source` and `M` of type `target`, by
/// listing for each cyclic summand `F_q[T]/(T^a)` of `N` the admissible
/// images `y ∈ M` with `T^a y = 0`.
pub fn hom_count_brute(source: &Partition, target: &Partition, q: u64) -> Result<u64> {
    check_scale(target, q)?;
    let space = ModuleSpace::new(target, FiniteField::new(q)?);
    let mut total = 1u64;
    for &a in source.parts() {
        total *= annihilated(&space, a).len() as u64;
    }
    Ok(total)
}

/// `|Aut(M)|` for `M` of type `kind`, by enumerating all endomorphisms and
/// keeping the bijective ones.
pub fn aut_count_brute(kind: &Partition, q: u64) -> Result<u64> {
    check_scale(kind, q)?;
    let space = ModuleSpace::new(kind, FiniteField::new(q)?);
    let choices: Vec<Vec<Vec<u8>>> = kind.parts().iter().map(|&a| annihilated(&space, a)).collect();
    let tuples: u64 = choices.iter().map(|c| c.len() as u64).product();
    if tuples > 20_000_000 {
        return Err(Error::TooLarge(format!("{tuples} endomorphisms of {kind} over F_{q}")));
    }
    let mut count = 0u64;
    let mut pick = vec![0usize; choices.len()];
    loop {
        // image of each basis vector T^j e_i is T^j y_i
        let images = space
            .label
            .iter()
            .map(|&(i, j)| space.apply_t_pow(&choices[i][pick[i]], j));
        if Subspace::span(&space.field, images).dim() == space.dim() {
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == pick.len() {
                return Ok(count);
            }
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_partitions, part};

    fn p(parts: &[u32]) -> Partition {
        part(parts)
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_submodules(&p(&[1, 1]), &p(&[1]), &p(&[1]), 2).unwrap(), 3);
        assert_eq!(count_submodules(&p(&[2]), &p(&[1]), &p(&[1]), 2).unwrap(), 1);
        for q in [2, 3, 4, 5] {
            assert_eq!(count_submodules(&p(&[1, 1]), &Partition::empty(), &p(&[1, 1]), q).unwrap(), 1);
            assert_eq!(count_submodules(&p(&[1, 1]), &p(&[1, 1]), &Partition::empty(), q).unwrap(), 1);
            assert_eq!(count_submodules(&p(&[1, 1]), &p(&[1]), &p(&[1]), q).unwrap(), q + 1);
        }
        assert_eq!(count_submodules(&p(&[2]), &p(&[1]), &p(&[2]), 2).unwrap(), 0);
    }

    #[test]
    fn scale_cap() {
        assert!(matches!(submodule_census(&p(&[4, 3]), 2), Err(Error::TooLarge(_))));
        assert!(matches!(submodule_census(&p(&[1]), 11), Err(Error::TooLarge(_))));
        assert!(matches!(submodule_census(&p(&[1]), 6), Err(Error::NotPrimePower(6))));
    }

    // Subspaces of an elementary module are counted by Gaussian binomials.
    #[test]
    fn elementary_modules_match_grassmannians() {
        use crate::exact::rat;
        use crate::numbers::gaussian_binomial_at;
        for (n, q) in [(3u32, 2u64), (4, 2), (3, 3), (2, 4), (2, 9)] {
            let census = submodule_census(&Partition::column(n), q).unwrap();
            for k in 0..=n {
                let got = census[&(Partition::column(k), Partition::column(n - k))];
                assert_eq!(rat(got as i64), gaussian_binomial_at(n, k, &rat(q as i64)));
            }
        }
    }

    // Independent count for q = 2: all subsets of elements closed under
    // addition and T, containing 0.
    fn closed_subsets(kind: &Partition) -> u64 {
        let space = ModuleSpace::new(kind, FiniteField::new(2).unwrap());
        let dim = space.dim();
        let size = 1usize << dim;
        let t_of: Vec<usize> = (0..size)
            .map(|x| {
                let v: Vec<u8> = (0..dim).map(|b| ((x >> b) & 1) as u8).collect();
                space.apply_t(&v).iter().enumerate().map(|(b, &c)| (c as usize) << b).sum()
            })
            .collect();
        let mut count = 0;
        for mask in 0u64..(1u64 << (size - 1)) {
            let set = |x: usize| x == 0 || (mask >> (x - 1)) & 1 == 1;
            let ok = (1..size).filter(|&x| set(x)).all(|x| {
                set(t_of[x]) && (1..size).filter(|&y| set(y)).all(|y| set(x ^ y))
            });
            if ok {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn census_totals_match_closed_subsets() {
        for n in 0..=4 {
            for l in enumerate_partitions(n, None) {
                let total: u64 = submodule_census(&l, 2).unwrap().values().sum();
                assert_eq!(total, closed_subsets(&l), "{l}");
            }
        }
    }

    #[test]
    fn census_respects_weights_and_duality() {
        for n in 0..=5 {
            for l in enumerate_partitions(n, None) {
                for q in [2, 3] {
                    let census = submodule_census(&l, q).unwrap();
                    for ((a, b), &c) in census.iter() {
                        assert_eq!(a.weight() + b.weight(), n);
                        // finite modules are self-dual: swapping type and cotype
                        assert_eq!(census.get(&(b.clone(), a.clone())), Some(&c), "{l} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn hom_counts() {
        assert_eq!(hom_count_brute(&p(&[1]), &p(&[1]), 2).unwrap(), 2);
        assert_eq!(hom_count_brute(&p(&[1, 1]), &p(&[2]), 2).unwrap(), 4);
        assert_eq!(hom_count_brute(&Partition::empty(), &p(&[2]), 3).unwrap(), 1);
    }

    #[test]
    fn aut_counts() {
        assert_eq!(aut_count_brute(&p(&[1]), 2).unwrap(), 1);
        assert_eq!(aut_count_brute(&p(&[1, 1]), 2).unwrap(), 6);
        assert_eq!(aut_count_brute(&p(&[2]), 3).unwrap(), 6);
        assert_eq!(aut_count_brute(&Partition::empty(), 3).unwrap(), 1);
    }
}
