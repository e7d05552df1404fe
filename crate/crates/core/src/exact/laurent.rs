use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};

use super::rational::{is_integer, parse_rational, pow_i, rat, to_exact_string, Rational};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in one variable `t` over the rationals.
///
/// Zero coefficients are never stored, so structural equality is equality
/// of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(rat(1))
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::monomial(rat(1), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        LaurentPolynomial { coeffs }
    }

    /// `t^exp` with coefficient one.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(rat(1), exp)
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Integer-coefficient shorthand: `from_ints(&[(0, 1), (2, -1)])` is `1 - t²`.
    pub fn from_ints(terms: &[(i64, i64)]) -> Self {
        Self::from_terms(terms.iter().map(|&(e, c)| (e, rat(c))))
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(One::is_one)
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Non-zero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    /// True if there are no negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.coeffs.values().all(is_integer)
    }

    pub fn has_nonneg_integer_coefficients(&self) -> bool {
        self.coeffs.values().all(|c| is_integer(c) && !c.is_negative())
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, x)| (e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// `t^shift · p(t^{-1})`.
    pub fn reverse_tilde(&self, shift: i64) -> Self {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (shift - e, c.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ t^k` for a nonzero integer `k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        assert!(k != 0, "substitute_power needs a nonzero exponent");
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e * k, c.clone())).collect(),
        }
    }

    pub fn evaluate(&self, t0: &Rational) -> Result<Rational> {
        let mut acc = Rational::zero();
        for (&e, c) in &self.coeffs {
            acc += c * pow_i(t0, e)?;
        }
        Ok(acc)
    }

    /// Long division of polynomials (no negative exponents) over the
    /// rationals. Returns `(quotient, remainder)`.
    pub(crate) fn div_rem_poly(&self, divisor: &Self) -> Result<(Self, Self)> {
        debug_assert!(self.is_polynomial() && divisor.is_polynomial());
        let (dd, lc) = match (divisor.degree(), divisor.leading_coeff()) {
            (Some(d), Some(c)) => (d, c.clone()),
            _ => return Err(Error::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.coeff(rd) / &lc;
            let term = Self::monomial(c, rd - dd);
            rem -= &(&term * divisor);
            quot += &term;
        }
        Ok((quot, rem))
    }

    /// Monic gcd of two polynomials; `gcd(0, 0) = 0`.
    pub(crate) fn gcd_poly(a: &Self, b: &Self) -> Result<Self> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem_poly(&y)?;
            x = y;
            y = r;
        }
        Ok(x.monic())
    }

    /// Divides by the leading coefficient; zero stays zero.
    /// The unique polynomial of degree `< points.len()` through the given
    /// points, by Newton divided differences.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let n = points.len();
        let mut coef: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                if dx.is_zero() {
                    return Err(Error::InvalidInput("repeated interpolation node".into()));
                }
                coef[i] = (&coef[i] - &coef[i - 1]) / dx;
            }
        }
        let mut acc = LaurentPolynomial::zero();
        for i in (0..n).rev() {
            let factor = LaurentPolynomial::from_terms([(1, rat(1)), (0, -points[i].0.clone())]);
            acc = &(&acc * &factor) + &LaurentPolynomial::constant(coef[i].clone());
        }
        Ok(acc)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }
}

impl From<Rational> for LaurentPolynomial {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPolynomial {
    fn from(c: i64) -> Self {
        Self::constant(rat(c))
    }
}

impl AddAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn add_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPolynomial> for LaurentPolynomial {
    fn sub_assign(&mut self, rhs: &LaurentPolynomial) {
        for (&e, c) in &rhs.coeffs {
            self.add_term(e, -c.clone());
        }
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { $tr::$m(&self, &rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { $tr::$m(&self, rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(LaurentPolynomial, Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for LaurentPolynomial {
    fn sum<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl std::iter::Product for LaurentPolynomial {
    fn product<I: Iterator<Item = LaurentPolynomial>>(iter: I) -> Self {
        iter.fold(LaurentPolynomial::one(), |acc, x| &acc * &x)
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || e == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{e}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

/// `{"exp": "p/q", ...}` with exponents as decimal strings.
impl Serialize for LaurentPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (e, c) in &self.coeffs {
            map.serialize_entry(&e.to_string(), &to_exact_string(c))?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = LaurentPolynomial;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent strings to rational strings")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Self::Value, A::Error> {
                let mut p = LaurentPolynomial::zero();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    let e: i64 = k.parse().map_err(de::Error::custom)?;
                    let c = parse_rational(&v).map_err(de::Error::custom)?;
                    p.add_term(e, c);
                }
                Ok(p)
            }
        }
        deserializer.deserialize_map(V)
    }
}
