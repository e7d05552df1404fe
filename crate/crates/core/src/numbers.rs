//! Small integer and `t`-analogue helpers shared by the Hall and Hecke code.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, LaurentPolynomial, Rational};

/// `(p, k)` with `q = p^k`, or an error when `q` is not a prime power.
pub fn prime_power_decomposition(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return Ok((q, 1));
    }
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Ok((p, k))
    } else {
        Err(Error::NotPrimePower(q))
    }
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_decomposition(q).is_ok()
}

/// Prime powers `≥ start` in increasing order.
pub fn prime_powers_from(start: u64) -> impl Iterator<Item = u64> {
    (start.max(2)..).filter(|&q| is_prime_power(q))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `1 - t^k`.
pub fn one_minus_t_pow(k: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_ints(&[(0, 1), (k, -1)])
}

/// `φ_r(t) = (1 - t)(1 - t^2)⋯(1 - t^r)`.
pub fn phi(r: u32) -> LaurentPolynomial {
    (1..=r as i64).map(one_minus_t_pow).product()
}

/// Gaussian binomial `[n; k]_t` as a polynomial in `t`.
pub fn gaussian_binomial(n: u32, k: u32) -> LaurentPolynomial {
    if k > n {
        return LaurentPolynomial::zero();
    }
    // Pascal rule [n;k] = [n-1;k-1] + t^k [n-1;k]
    let mut row = vec![LaurentPolynomial::one()];
    for m in 1..=n as usize {
        let mut next = vec![LaurentPolynomial::one(); m + 1];
        for j in 1..m {
            next[j] = &row[j - 1] + &row[j].shift(j as i64);
        }
        row = next;
    }
    row.swap_remove(k as usize)
}

/// `[n; k]_q` at an exact point.
pub fn gaussian_binomial_at(n: u32, k: u32, q: &Rational) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut num = rat(1);
    let mut den = rat(1);
    let mut qi = rat(1);
    let mut powers = Vec::with_capacity(n as usize + 1);
    for _ in 0..=n {
        powers.push(qi.clone());
        qi *= q;
    }
    for i in 0..k as usize {
        num *= rat(1) - &powers[n as usize - i];
        den *= rat(1) - &powers[i + 1];
    }
    if den.is_zero() {
        // q = 1: ordinary binomial
        return Rational::from_integer(binomial(n as u64, k as u64));
    }
    num / den
}

/// Determinant of a square matrix over the rationals by Gaussian
/// elimination.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = rat(1);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= &m[col][col];
        let inv = m[col][col].recip();
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * p;
            }
        }
    }
    det
}
