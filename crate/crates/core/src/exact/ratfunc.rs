use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{forward_owned, LaurentPolynomial};
use super::rational::{to_exact_string, Rational};
use crate::error::{Error, Result};

/// Quotient of two Laurent polynomials in canonical form.
///
/// The denominator is a monic polynomial with nonzero constant term, any
/// power of `t` lives in the numerator, and numerator and denominator share
/// no common factor. Equal functions therefore have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

impl RationalFunction {
    pub fn new(num: LaurentPolynomial, den: LaurentPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let vd = den.valuation().unwrap_or(0);
        let den = den.shift(-vd);
        let num = num.shift(-vd);
        let vn = num.valuation().unwrap_or(0);
        let num_poly = num.shift(-vn);
        let g = LaurentPolynomial::gcd_poly(&num_poly, &den)?;
        let (num_poly, _) = num_poly.div_rem_poly(&g)?;
        let (den, _) = den.div_rem_poly(&g)?;
        let lc = den.leading_coeff().cloned().ok_or(Error::DivisionByZero)?.recip();
        Ok(RationalFunction {
            num: num_poly.scale(&lc).shift(vn),
            den: den.scale(&lc),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: LaurentPolynomial::zero(),
            den: LaurentPolynomial::one(),
        }
    }

    pub fn one() -> Self {
        Self::from(LaurentPolynomial::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from(LaurentPolynomial::constant(c))
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial this function equals, if any.
    pub fn as_laurent(&self) -> Option<&LaurentPolynomial> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// `f(t^{-1})` multiplied by `t^shift`, valuewise the analogue of
    /// [`LaurentPolynomial::reverse_tilde`].
    pub fn reverse_tilde(&self, shift: i64) -> Self {
        let num = self.num.reverse_tilde(shift);
        let den = self.den.reverse_tilde(0);
        Self::new(num, den).expect("reversed nonzero denominator is nonzero")
    }

    pub fn evaluate(&self, t0: &Rational) -> Result<Rational> {
        let d = self.den.evaluate(t0)?;
        if d.is_zero() {
            return Err(Error::Pole(to_exact_string(t0)));
        }
        Ok(self.num.evaluate(t0)? / d)
    }

    fn combine(&self, rhs: &Self, sign: bool) -> Self {
        if self.den == rhs.den {
            let num = if sign { &self.num + &rhs.num } else { &self.num - &rhs.num };
            return Self::new(num, self.den.clone()).expect("nonzero denominator");
        }
        let left = &self.num * &rhs.den;
        let right = &rhs.num * &self.den;
        let num = if sign { left + right } else { left - right };
        Self::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl From<LaurentPolynomial> for RationalFunction {
    fn from(p: LaurentPolynomial) -> Self {
        RationalFunction {
            num: p,
            den: LaurentPolynomial::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        Self::from(LaurentPolynomial::from(c))
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, true)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        if rhs.is_zero() {
            return self.clone();
        }
        self.combine(rhs, false)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from(&self.num * &rhs.num);
        }
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

forward_owned!(RationalFunction, Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = RationalFunction>>(iter: I) -> Self {
        iter.fold(RationalFunction::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    num: LaurentPolynomial,
    den: LaurentPolynomial,
}

/// `{"num": …, "den": …}` with both parts in the Laurent wire format.
impl Serialize for RationalFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            num: self.num.clone(),
            den: self.den.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(deserializer)?;
        RationalFunction::new(w.num, w.den).map_err(serde::de::Error::custom)
    }
}
