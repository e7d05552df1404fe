//! Small finite fields `F_q` as lookup tables, used by the brute-force
//! module enumerations.

use crate::error::{Error, Result};
use crate::numbers::prime_power_decomposition;

/// `F_q` with elements `0..q`. For `q = p^k` an element is the base-`p`
/// digit vector of a polynomial modulo a fixed irreducible of degree `k`.
#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power_decomposition(q)?;
        if q > 256 {
            return Err(Error::TooLarge(format!("finite field of size {q}")));
        }
        let (p, k, q) = (p as usize, k as usize, q as usize);
        let modulus = irreducible(p, k);
        let digits = |mut x: usize| {
            let mut d = vec![0usize; k];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * p + x);

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s) as u8;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate().take(k) {
                            let at = deg - k + i;
                            prod[at] = (prod[at] + p - (c * m) % p) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k]) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).expect("additive inverse") as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).expect("field has inverses") as u8;
        }
        Ok(FiniteField { q, add, mul, neg, inv })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    pub fn inv(&self, a: u8) -> u8 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }
}

/// Coefficients `c_0..c_k` (with `c_k = 1`) of a monic irreducible of degree
/// `k` over `F_p`, found by exhaustive search for a polynomial with no
/// factor of degree `≤ k/2`.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0, 1];
    }
    let total = p.pow(k as u32);
    for code in 0..total {
        let mut f = Vec::with_capacity(k + 1);
        let mut x = code;
        for _ in 0..k {
            f.push(x % p);
            x /= p;
        }
        f.push(1);
        if (1..=k / 2).all(|d| !has_monic_factor_of_degree(&f, d, p)) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn has_monic_factor_of_degree(f: &[usize], d: usize, p: usize) -> bool {
    (0..p.pow(d as u32)).any(|code| {
        let mut g = Vec::with_capacity(d + 1);
        let mut x = code;
        for _ in 0..d {
            g.push(x % p);
            x /= p;
        }
        g.push(1);
        remainder_is_zero(f, &g, p)
    })
}

fn remainder_is_zero(f: &[usize], g: &[usize], p: usize) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for deg in (dg..r.len()).rev() {
        let c = r[deg];
        if c != 0 {
            for (i, gi) in g.iter().enumerate() {
                let at = deg - dg + i;
                r[at] = (r[at] + p - (c * gi) % p) % p;
            }
        }
    }
    r[..dg].iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            let n = q as u8;
            for a in 0..n {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.sub(a, a), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..n {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    if a != 0 && b != 0 {
                        assert_ne!(f.mul(a, b), 0, "q = {q}: zero divisors");
                    }
                    for c in 0..n {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert_eq!(FiniteField::new(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(FiniteField::new(1).unwrap_err(), Error::NotPrimePower(1));
    }
}
