use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

/// `"p/q"`, with `q = 1` written out for integers.
pub fn to_exact_string(x: &Rational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("cannot parse rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// `base^exp` for signed exponents.
pub fn pow_i(base: &Rational, exp: i64) -> Result<Rational> {
    if exp >= 0 {
        return Ok(num_traits::pow(base.clone(), exp as usize));
    }
    if base.is_zero() {
        return Err(Error::ZeroToNegativePower);
    }
    Ok(num_traits::pow(base.recip(), exp.unsigned_abs() as usize))
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn is_nonneg_integer(x: &Rational) -> bool {
    is_integer(x) && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_strings() {
        assert_eq!(to_exact_string(&rat(43)), "43/1");
        assert_eq!(to_exact_string(&ratio(-2, 4)), "-1/2");
        assert_eq!(parse_rational("6/-4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn signed_powers() {
        assert_eq!(pow_i(&rat(4), -1).unwrap(), ratio(1, 4));
        assert_eq!(pow_i(&rat(0), 0).unwrap(), rat(1));
        assert_eq!(pow_i(&rat(0), -2), Err(Error::ZeroToNegativePower));
    }
}
