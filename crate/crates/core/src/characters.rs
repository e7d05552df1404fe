//! Symmetric-group characters, class functions with values in `Q(t)`, the
//! `t`-deformed inner product, and restriction/induction along
//! `S_m × S_n ⊂ S_{m+n}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_traits::{ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPolynomial, Rational, RationalFunction};
use crate::numbers::{binomial, factorial, one_minus_t_pow};
use crate::partitions::{enumerate_partitions, Partition};

/// Function on the conjugacy classes of `S_N`, indexed by cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    degree: u32,
    values: BTreeMap<Partition, RationalFunction>,
}

impl ClassFunction {
    pub fn new(degree: u32, values: BTreeMap<Partition, RationalFunction>) -> Result<Self> {
        let classes = enumerate_partitions(degree, None);
        if classes.len() != values.len() || classes.iter().any(|c| !values.contains_key(c)) {
            return Err(Error::InvalidInput(format!(
                "class function of degree {degree} needs exactly the partitions of {degree} as keys"
            )));
        }
        Ok(ClassFunction { degree, values })
    }

    pub fn from_fn(degree: u32, mut f: impl FnMut(&Partition) -> RationalFunction) -> Self {
        let values = enumerate_partitions(degree, None).into_iter().map(|c| {
            let v = f(&c);
            (c, v)
        });
        ClassFunction {
            degree,
            values: values.collect(),
        }
    }

    pub fn zero(degree: u32) -> Self {
        Self::from_fn(degree, |_| RationalFunction::zero())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Value at the class of cycle type `class`; zero for foreign keys.
    pub fn value(&self, class: &Partition) -> RationalFunction {
        self.values.get(class).cloned().unwrap_or_else(RationalFunction::zero)
    }

    pub fn values(&self) -> &BTreeMap<Partition, RationalFunction> {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(RationalFunction::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        Ok(Self::from_fn(self.degree, |c| &self.values[c] + &other.values[c]))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        self.map(|v| v * c)
    }

    pub fn map(&self, mut f: impl FnMut(&RationalFunction) -> RationalFunction) -> Self {
        ClassFunction {
            degree: self.degree,
            values: self.values.iter().map(|(k, v)| (k.clone(), f(v))).collect(),
        }
    }

    /// Specializes every value at `t = t0`.
    pub fn evaluate(&self, t0: &Rational) -> Result<BTreeMap<Partition, Rational>> {
        self.values
            .iter()
            .map(|(k, v)| Ok((k.clone(), v.evaluate(t0)?)))
            .collect()
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(format!("{} vs {}", self.degree, other.degree)));
        }
        Ok(())
    }
}

/// `{"degree": N, "values": {"2,1": …}}`, keyed by partition strings.
impl Serialize for ClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ClassFunction", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("values", &Keyed(&self.values, |p: &Partition| p.to_string()))?;
        st.end()
    }
}

struct Keyed<'a, K, V, F>(&'a BTreeMap<K, V>, F);

impl<K, V: Serialize, F: Fn(&K) -> String> Serialize for Keyed<'_, K, V, F> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&(self.1)(k), v)?;
        }
        map.end()
    }
}

/// Class function on `S_m × S_n`, indexed by pairs of cycle types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairClassFunction {
    degrees: (u32, u32),
    values: BTreeMap<(Partition, Partition), RationalFunction>,
}

impl PairClassFunction {
    pub fn from_fn(m: u32, n: u32, mut f: impl FnMut(&Partition, &Partition) -> RationalFunction) -> Self {
        let mut values = BTreeMap::new();
        let right = enumerate_partitions(n, None);
        for mu in enumerate_partitions(m, None) {
            for nu in &right {
                let v = f(&mu, nu);
                values.insert((mu.clone(), nu.clone()), v);
            }
        }
        PairClassFunction { degrees: (m, n), values }
    }

    pub fn zero(m: u32, n: u32) -> Self {
        Self::from_fn(m, n, |_, _| RationalFunction::zero())
    }

    pub fn degrees(&self) -> (u32, u32) {
        self.degrees
    }

    pub fn value(&self, mu: &Partition, nu: &Partition) -> RationalFunction {
        self.values
            .get(&(mu.clone(), nu.clone()))
            .cloned()
            .unwrap_or_else(RationalFunction::zero)
    }

    pub fn values(&self) -> &BTreeMap<(Partition, Partition), RationalFunction> {
        &self.values
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.degrees != other.degrees {
            return Err(Error::DegreeMismatch(format!("{:?} vs {:?}", self.degrees, other.degrees)));
        }
        let (m, n) = self.degrees;
        Ok(Self::from_fn(m, n, |a, b| self.value(a, b) + other.value(a, b)))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        PairClassFunction {
            degrees: self.degrees,
            values: self.values.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }
}

impl Serialize for PairClassFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PairClassFunction", 2)?;
        st.serialize_field("degrees", &self.degrees)?;
        st.serialize_field(
            "values",
            &Keyed(&self.values, |(a, b): &(Partition, Partition)| format!("{a}|{b}")),
        )?;
        st.end()
    }
}

/// `f × g` on `S_m × S_n`.
pub fn outer_product(f: &ClassFunction, g: &ClassFunction) -> PairClassFunction {
    PairClassFunction::from_fn(f.degree, g.degree, |a, b| &f.values[a] * &g.values[b])
}

type CharCache = Mutex<HashMap<(Partition, Partition), i64>>;

fn char_cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ^λ(ρ)` by the Murnaghan–Nakayama rule, removing a rim hook of length
/// `ρ_1` at each step. Zero when the weights differ.
pub fn character_value(lambda: &Partition, rho: &Partition) -> i64 {
    if lambda.weight() != rho.weight() {
        return 0;
    }
    if rho.is_empty() {
        return 1;
    }
    let key = (lambda.clone(), rho.clone());
    if let Some(&v) = char_cache().lock().expect("character cache poisoned").get(&key) {
        return v;
    }
    let r = rho.part(0);
    let rest = Partition::new(rho.parts()[1..].to_vec()).expect("suffix of a partition");
    let len = lambda.len() as u32;
    // beta numbers λ_i + (ℓ - i), strictly decreasing
    let beta: Vec<u32> = (0..len).map(|i| lambda.part(i as usize) + len - 1 - i).collect();
    let mut total = 0i64;
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let height = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts = next.iter().enumerate().map(|(i, &x)| x - (len - 1 - i as u32)).collect();
        let smaller = Partition::new(parts).expect("rim hook removal leaves a partition");
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * character_value(&smaller, &rest);
    }
    char_cache().lock().expect("character cache poisoned").insert(key, total);
    total
}

pub fn irreducible_character(lambda: &Partition) -> ClassFunction {
    ClassFunction::from_fn(lambda.weight(), |rho| RationalFunction::from(character_value(lambda, rho)))
}

/// All irreducible characters of `S_n`, rows in reverse-lexicographic order.
pub fn character_table(n: u32) -> Vec<(Partition, ClassFunction)> {
    enumerate_partitions(n, None)
        .into_iter()
        .map(|l| {
            let chi = irreducible_character(&l);
            (l, chi)
        })
        .collect()
}

/// `z_λ(t) = Π_i i^{m_i} m_i! / (1 - t^i)^{m_i}`.
pub fn z_factor(lambda: &Partition) -> RationalFunction {
    let (num, den) = z_parts(lambda);
    RationalFunction::new(LaurentPolynomial::constant(num), den).expect("nonzero denominator")
}

/// `z_λ(t)^{-1}`, which is a polynomial.
pub fn z_factor_inv(lambda: &Partition) -> LaurentPolynomial {
    let (num, den) = z_parts(lambda);
    den.scale(&num.recip())
}

fn z_parts(lambda: &Partition) -> (Rational, LaurentPolynomial) {
    let mut num = rat(1);
    let mut den = LaurentPolynomial::one();
    for (&i, &m) in &lambda.multiplicities() {
        num *= Rational::from_integer(num_bigint::BigInt::from(i).pow(m) * factorial(m as u64));
        den = &den * &one_minus_t_pow(i as i64).pow(m);
    }
    (num, den)
}

/// `(f, g)_t = Σ_λ z_λ(t)^{-1} f_λ g_λ`.
pub fn inner_product_t(f: &ClassFunction, g: &ClassFunction) -> Result<RationalFunction> {
    f.check_degree(g)?;
    Ok(f.values
        .iter()
        .map(|(c, v)| RationalFunction::from(z_factor_inv(c)) * (v * &g.values[c]))
        .sum())
}

/// `Σ_{μ,ν} z_μ(t)^{-1} z_ν(t)^{-1} f_{μν} g_{μν}`.
pub fn pair_inner_product_t(f: &PairClassFunction, g: &PairClassFunction) -> Result<RationalFunction> {
    if f.degrees != g.degrees {
        return Err(Error::DegreeMismatch(format!("{:?} vs {:?}", f.degrees, g.degrees)));
    }
    Ok(f.values
        .iter()
        .map(|((a, b), v)| {
            let z = &z_factor_inv(a) * &z_factor_inv(b);
            RationalFunction::from(z) * (v * &g.values[&(a.clone(), b.clone())])
        })
        .sum())
}

/// `Res f` on `S_m × S_n`: the value at `(μ, ν)` is `f` at `μ ∪ ν`.
pub fn restrict(f: &ClassFunction, m: u32, n: u32) -> Result<PairClassFunction> {
    if m + n != f.degree {
        return Err(Error::BadSplit(format!("{m} + {n} != {}", f.degree)));
    }
    Ok(PairClassFunction::from_fn(m, n, |a, b| f.value(&a.union(b))))
}

/// `Ind g` on `S_{m+n}`: the value at `λ` sums
/// `Π_i C(m_i(μ) + m_i(ν), m_i(μ)) g_{μν}` over all `(μ, ν)` with
/// `μ ∪ ν = λ`, and is zero at classes admitting no such splitting.
pub fn induce(g: &PairClassFunction, m: u32, n: u32) -> Result<ClassFunction> {
    if g.degrees != (m, n) {
        return Err(Error::DegreeMismatch(format!("{:?} vs {:?}", g.degrees, (m, n))));
    }
    let mut out = ClassFunction::zero(m + n);
    for ((a, b), v) in &g.values {
        if v.is_zero() {
            continue;
        }
        let mut weight = num_bigint::BigInt::from(1);
        let ma = a.multiplicities();
        for (&i, &k) in &b.multiplicities() {
            let j = ma.get(&i).copied().unwrap_or(0);
            weight *= binomial((j + k) as u64, j as u64);
        }
        let slot = out.values.get_mut(&a.union(b)).expect("union has weight m + n");
        *slot = &*slot + &v.scale(&Rational::from_integer(weight));
    }
    Ok(out)
}

/// Multiplicity of `χ^μ × χ^ν` in `Res χ^λ`, i.e. the Littlewood–Richardson
/// coefficient `c^λ_{μν}`; zero when the weights do not add up.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> i64 {
    if lambda.weight() != mu.weight() + nu.weight() {
        return 0;
    }
    let mut acc = Rational::zero();
    let right = enumerate_partitions(nu.weight(), None);
    for a in enumerate_partitions(mu.weight(), None) {
        for b in &right {
            let v = character_value(lambda, &a.union(b)) * character_value(mu, &a) * character_value(nu, b);
            if v != 0 {
                acc += rat(v) / (z_at_zero(&a) * z_at_zero(b));
            }
        }
    }
    assert!(acc.is_integer(), "character multiplicity must be an integer");
    acc.to_integer().to_i64().expect("small multiplicity")
}

fn z_at_zero(lambda: &Partition) -> Rational {
    z_parts(lambda).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::part;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        part(parts)
    }

    fn at_zero(f: &RationalFunction) -> Rational {
        f.evaluate(&rat(0)).unwrap()
    }

    #[test]
    fn small_characters() {
        let triv = irreducible_character(&p(&[3]));
        assert!(triv.values().values().all(|v| v == &RationalFunction::one()));
        let sign = irreducible_character(&p(&[1, 1]));
        assert_eq!(sign.value(&p(&[1, 1])), RationalFunction::one());
        assert_eq!(sign.value(&p(&[2])), RationalFunction::from(-1));
        let chi = irreducible_character(&p(&[2, 1]));
        assert_eq!(chi.value(&p(&[1, 1, 1])), RationalFunction::from(2));
        assert!(chi.value(&p(&[2, 1])).is_zero());
        assert_eq!(chi.value(&p(&[3])), RationalFunction::from(-1));
        assert_eq!(character_value(&Partition::empty(), &Partition::empty()), 1);
    }

    fn hook_dimension(l: &Partition) -> i64 {
        let conj = l.conjugate();
        let mut hooks = num_bigint::BigInt::from(1);
        for (i, &row) in l.parts().iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j) + conj.part(j as usize) - i as u32 - 1;
            }
        }
        (factorial(l.weight() as u64) / hooks).to_i64().unwrap()
    }

    #[test]
    fn identity_class_gives_hook_dimension() {
        for n in 0..=8 {
            for l in enumerate_partitions(n, None) {
                assert_eq!(character_value(&l, &Partition::column(n)), hook_dimension(&l), "{l}");
            }
        }
    }

    // Column orthogonality: Σ_λ χ^λ(ρ) χ^λ(σ) = δ_{ρσ} z_ρ.
    #[test]
    fn column_orthogonality() {
        for n in 1..=7 {
            let all = enumerate_partitions(n, None);
            for r in &all {
                for s in &all {
                    let sum: i64 = all.iter().map(|l| character_value(l, r) * character_value(l, s)).sum();
                    let expected = if r == s { z_at_zero(r) } else { Rational::zero() };
                    assert_eq!(rat(sum), expected, "{r} {s}");
                }
            }
        }
    }

    #[test]
    fn z_factors() {
        let lp = LaurentPolynomial::from_ints;
        assert_eq!(z_factor(&p(&[1])), RationalFunction::new(lp(&[(0, 1)]), lp(&[(0, 1), (1, -1)])).unwrap());
        assert_eq!(z_factor(&p(&[2])), RationalFunction::new(lp(&[(0, 2)]), lp(&[(0, 1), (2, -1)])).unwrap());
        assert_eq!(
            z_factor(&p(&[1, 1])),
            RationalFunction::new(lp(&[(0, 2)]), lp(&[(0, 1), (1, -2), (2, 1)])).unwrap()
        );
        assert_eq!(z_factor(&p(&[2, 1, 1])).inv().unwrap(), RationalFunction::from(z_factor_inv(&p(&[2, 1, 1]))));
    }

    #[test]
    fn inner_products() {
        let c1 = irreducible_character(&p(&[1]));
        let expected = RationalFunction::from(LaurentPolynomial::from_ints(&[(0, 1), (1, -1)]));
        assert_eq!(inner_product_t(&c1, &c1).unwrap(), expected);
        let a = irreducible_character(&p(&[2]));
        let b = irreducible_character(&p(&[1, 1]));
        assert!(at_zero(&inner_product_t(&a, &b).unwrap()).is_zero());
        assert_eq!(at_zero(&inner_product_t(&a, &a).unwrap()), rat(1));
        assert!(matches!(inner_product_t(&a, &c1), Err(Error::DegreeMismatch(_))));
    }

    #[test]
    fn orthonormal_at_zero() {
        for n in 0..=5 {
            let table = character_table(n);
            for (l, f) in &table {
                for (m, g) in &table {
                    let v = at_zero(&inner_product_t(f, g).unwrap());
                    assert_eq!(v, rat((l == m) as i64), "{l} {m}");
                }
            }
        }
    }

    #[test]
    fn pair_inner_product_examples() {
        let one = PairClassFunction::from_fn(1, 1, |_, _| RationalFunction::one());
        let expected = RationalFunction::from(LaurentPolynomial::from_ints(&[(0, 1), (1, -2), (2, 1)]));
        assert_eq!(pair_inner_product_t(&one, &one).unwrap(), expected);
        assert!(pair_inner_product_t(&PairClassFunction::zero(1, 1), &one).unwrap().is_zero());
    }

    #[test]
    fn restriction_and_induction_examples() {
        let triv = ClassFunction::from_fn(3, |_| RationalFunction::one());
        let res = restrict(&triv, 2, 1).unwrap();
        assert!(res.values().values().all(|v| v == &RationalFunction::one()));
        let sign = irreducible_character(&p(&[1, 1]));
        assert_eq!(restrict(&sign, 1, 1).unwrap().value(&p(&[1]), &p(&[1])), RationalFunction::one());
        let chi = irreducible_character(&p(&[2, 1]));
        assert!(restrict(&chi, 2, 1).unwrap().value(&p(&[2]), &p(&[1])).is_zero());
        assert!(matches!(restrict(&chi, 2, 2), Err(Error::BadSplit(_))));

        let one = PairClassFunction::from_fn(1, 1, |_, _| RationalFunction::one());
        let ind = induce(&one, 1, 1).unwrap();
        assert_eq!(ind.value(&p(&[1, 1])), RationalFunction::from(2));
        assert!(ind.value(&p(&[2])).is_zero());
        assert!(induce(&PairClassFunction::zero(2, 1), 2, 1).unwrap().is_zero());

        let triv2 = irreducible_character(&p(&[2]));
        let lhs = inner_product_t(&triv2, &ind).unwrap();
        let rhs = pair_inner_product_t(&restrict(&triv2, 1, 1).unwrap(), &one).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn adjunction_for_irreducibles() {
        for total in 1..=5 {
            for m in 0..=total {
                let n = total - m;
                for (_, f) in character_table(total) {
                    for (_, a) in character_table(m) {
                        for (_, b) in character_table(n) {
                            let g = outer_product(&a, &b);
                            let lhs = inner_product_t(&f, &induce(&g, m, n).unwrap()).unwrap();
                            let rhs = pair_inner_product_t(&restrict(&f, m, n).unwrap(), &g).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn induced_dimension() {
        for total in 1..=6u32 {
            for m in 0..=total {
                let n = total - m;
                for mu in enumerate_partitions(m, None) {
                    for nu in enumerate_partitions(n, None) {
                        let g = outer_product(&irreducible_character(&mu), &irreducible_character(&nu));
                        let dim = induce(&g, m, n).unwrap().value(&Partition::column(total));
                        let expected = binomial(total as u64, m as u64).to_i64().unwrap()
                            * hook_dimension(&mu)
                            * hook_dimension(&nu);
                        assert_eq!(dim, RationalFunction::from(expected));
                    }
                }
            }
        }
    }

    #[test]
    fn littlewood_richardson_examples() {
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[1, 1]), &p(&[1]), &p(&[1])), 1);
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1, 1]), &p(&[1])), 0);
        assert_eq!(lr_coefficient(&p(&[3, 2, 1]), &p(&[2, 1]), &p(&[2, 1])), 2);
        assert_eq!(lr_coefficient(&p(&[3]), &p(&[1]), &p(&[1])), 0);
    }

    // Pieri: χ^μ × χ^{(k)} induces to the sum over horizontal strips.
    #[test]
    fn littlewood_richardson_pieri() {
        for total in 1..=6u32 {
            for k in 1..=total {
                for mu in enumerate_partitions(total - k, None) {
                    for l in enumerate_partitions(total, None) {
                        let strip = (0..l.len().max(mu.len())).all(|i| {
                            mu.part(i) <= l.part(i) && (i == 0 || l.part(i) <= mu.part(i - 1))
                        });
                        let expected = strip as i64;
                        assert_eq!(lr_coefficient(&l, &mu, &Partition::row(k)), expected, "{l} {mu} {k}");
                    }
                }
            }
        }
    }

    fn arb_triple() -> impl Strategy<Value = (Partition, Partition, Partition)> {
        (1u32..=6).prop_flat_map(|n| {
            (0..=n).prop_flat_map(move |m| {
                let ls = enumerate_partitions(n, None);
                let ms = enumerate_partitions(m, None);
                let ns = enumerate_partitions(n - m, None);
                (
                    proptest::sample::select(ls),
                    proptest::sample::select(ms),
                    proptest::sample::select(ns),
                )
            })
        })
    }

    proptest! {
        #[test]
        fn lr_is_symmetric((l, a, b) in arb_triple()) {
            prop_assert_eq!(lr_coefficient(&l, &a, &b), lr_coefficient(&l, &b, &a));
            prop_assert!(lr_coefficient(&l, &a, &b) >= 0);
        }
    }
}
