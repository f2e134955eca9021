//! Greatest common divisors in `Z[x]` from images modulo word-sized primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{self, is_prime, reduce_big};

/// Primes below `2^62`, in decreasing order.
fn primes() -> impl Iterator<Item = u64> {
    ((1u64 << 61)..(1u64 << 62)).rev().step_by(2).filter(|&n| is_prime(n))
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if v.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    for c in v.iter_mut() {
        *c = &*c / &content * &sign;
    }
    v
}

/// Whether `d` divides `a` in `Z[x]`.
fn divides(d: &[BigInt], a: &[BigInt]) -> bool {
    let mut r = a.to_vec();
    let lc = d.last().unwrap();
    while r.len() >= d.len() {
        let top = r.last().unwrap().clone();
        if !top.is_zero() {
            let (q, rem) = top.div_rem(lc);
            if !rem.is_zero() {
                return false;
            }
            let shift = r.len() - d.len();
            for (i, c) in d.iter().enumerate() {
                r[shift + i] -= &q * c;
            }
        }
        r.pop();
    }
    r.iter().all(|c| c.is_zero())
}

/// Primitive gcd with positive leading coefficient of two nonzero integer
/// polynomials (coefficients from the constant term up).
pub fn gcd_integer(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (a, b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if a.len() == 1 || b.len() == 1 {
        return vec![BigInt::one()];
    }
    let lc_gcd = a.last().unwrap().gcd(b.last().unwrap());
    let mut best: Option<usize> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last: Vec<BigInt> = Vec::new();
    for p in primes() {
        let (la, lb) = (reduce_big(a.last().unwrap(), p), reduce_big(b.last().unwrap(), p));
        if la == 0 || lb == 0 {
            continue;
        }
        let ga: Vec<u64> = a.iter().map(|c| reduce_big(c, p)).collect();
        let gb: Vec<u64> = b.iter().map(|c| reduce_big(c, p)).collect();
        let g = modp::gcd(&ga, &gb, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![BigInt::one()];
        }
        let g = modp::scale(&g, reduce_big(&lc_gcd, p), p);
        match best {
            Some(b) if d > b => continue,
            Some(b) if d == b => {
                let pb = BigInt::from(p);
                let m_inv = modp::invmod(reduce_big(&modulus, p), p).unwrap();
                for (x, &c) in acc.iter_mut().zip(&g) {
                    let diff = (c + p - reduce_big(x, p)) % p;
                    *x += &modulus * BigInt::from(modp::mulmod(diff, m_inv, p));
                }
                modulus *= pb;
            }
            _ => {
                best = Some(d);
                acc = g.iter().map(|&c| BigInt::from(c)).collect();
                modulus = BigInt::from(p);
                last.clear();
                continue;
            }
        }
        let candidate: Vec<BigInt> = acc.iter().map(|c| symmetric(c, &modulus)).collect();
        if candidate == last {
            let cand = primitive(candidate.clone());
            if divides(&cand, &a) && divides(&cand, &b) {
                return cand;
            }
        }
        last = candidate;
    }
    unreachable!("prime supply exhausted")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cases() {
        // (x + 1)(2x - 3) and (x + 1)(x + 5)
        assert_eq!(gcd_integer(&v(&[-3, -1, 2]), &v(&[5, 6, 1])), v(&[1, 1]));
        assert_eq!(gcd_integer(&v(&[1, 0, 1]), &v(&[-1, 0, 1])), v(&[1]));
        // (3x - 1)^2 and 6x - 2
        assert_eq!(gcd_integer(&v(&[1, -6, 9]), &v(&[-2, 6])), v(&[-1, 3]));
    }
}
