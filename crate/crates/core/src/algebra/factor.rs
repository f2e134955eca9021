//! Factorization over the rationals: square-free decomposition, then
//! factorization modulo a prime, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, Fp};
use super::{AlgebraError, QPoly, Rat};

/// `lc * prod(f_i^{m_i})` with monic irreducible pairwise distinct `f_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub lc: Rat,
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.lc.clone()), |acc, (f, m)| acc.mul(&f.pow(*m as u32)))
    }
}

/// Square-free decomposition of a nonzero polynomial: monic pairwise coprime
/// square-free `a_i` with `f = lc * prod a_i^i` (Yun's algorithm).
pub fn squarefree_decomposition(f: &QPoly) -> Vec<(QPoly, usize)> {
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let df = f.derivative();
    let b = f.gcd(&df);
    let mut c = f.div_exact(&b).unwrap();
    let mut d = df.div_exact(&b).unwrap().sub(&c.derivative());
    let mut out = Vec::new();
    let mut i = 1;
    while c.degree().unwrap_or(0) > 0 {
        let a = c.gcd(&d);
        c = c.div_exact(&a).unwrap();
        d = d.div_exact(&a).unwrap().sub(&c.derivative());
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Factors a nonzero univariate polynomial into monic irreducibles over Q.
pub fn factor_univariate(f: &QPoly) -> Result<Factorization, AlgebraError> {
    let lc = f
        .lc()
        .cloned()
        .ok_or_else(|| AlgebraError::Input("cannot factor the zero polynomial".into()))?;
    let mut factors = Vec::new();
    for (a, m) in squarefree_decomposition(f) {
        for g in factor_squarefree(&a) {
            factors.push((g, m));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factorization { lc, factors })
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    let mut r = zmod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (ztrim(q), zmod(&r, m))
}

fn from_fp(a: &Fp) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_fp(a: &[BigInt], p: u64) -> Fp {
    modp::trim(a.iter().map(|c| modp::reduce_big(c, p)).collect())
}

/// One quadratic Hensel step: from `f = g h`, `s g + t h = 1` modulo `m`
/// to the same relations modulo `m^2`; `h` stays monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f = lc * prod(factors) mod p` to monic factors modulo `p^(2^steps)`.
fn multilift(f: &[BigInt], factors: &[Fp], p: u64, steps: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(1u32 << steps);
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(&modulus);
        let inv = lc.modinv(&modulus).expect("leading coefficient invertible");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = modp::reduce_big(f.last().unwrap(), p);
    let g0 = left.iter().fold(vec![lc_p], |acc, u| modp::mul(&acc, u, p));
    let h0 = right.iter().fold(vec![1u64], |acc, u| modp::mul(&acc, u, p));
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (from_fp(&g0), from_fp(&h0), from_fp(&s0), from_fp(&t0));
    let mut m = BigInt::from(p);
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multilift(&g, left, p, steps);
    out.extend(multilift(&h, right, p, steps));
    out
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let content = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if a.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    a.iter().map(|c| c / &content * sign).collect()
}

fn zpoly_to_q(a: &[BigInt]) -> QPoly {
    QPoly::from_bigints(a)
}

/// Irreducible monic factors of a monic square-free polynomial.
fn factor_squarefree(f: &QPoly) -> Vec<QPoly> {
    let n = f.degree().unwrap();
    if n == 1 {
        return vec![f.clone()];
    }
    let h = f.primitive_integer();
    let lc = h.last().unwrap().clone();

    // Collect a few good primes and keep the one with fewest modular factors.
    let mut candidates: Vec<(usize, u64)> = Vec::new();
    let mut q = 1009u64;
    while candidates.len() < 5 {
        q += 2;
        if !modp::is_prime(q) || (&lc % BigInt::from(q)).is_zero() {
            continue;
        }
        let hp = to_fp(&h, q);
        let g = modp::gcd(&hp, &modp::derivative(&hp, q), q);
        if modp::deg(&g) != Some(0) {
            continue;
        }
        let count: usize = modp::distinct_degree(&modp::monic(&hp, q), q)
            .iter()
            .map(|(g, d)| modp::deg(g).unwrap() / d)
            .sum();
        if count == 1 {
            return vec![f.clone()];
        }
        candidates.push((count, q));
    }
    let (_, p) = *candidates.iter().min().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let modular = modp::factor_squarefree(&modp::monic(&to_fp(&h, p), p), p, &mut rng);

    // Factor coefficient bound: 2^n * ||h||_2 * |lc|.
    let norm2 = h.iter().map(|c| c * c).fold(BigInt::zero(), |a, b| a + b).sqrt() + 1;
    let bound = (BigInt::one() << n) * norm2 * lc.abs();
    let target = bound * 2 + 1;
    let mut steps = 0u32;
    while BigInt::from(p).pow(1u32 << steps) <= target {
        steps += 1;
    }
    let modulus = BigInt::from(p).pow(1u32 << steps);
    let mut lifted = multilift(&h, &modular, p, steps);

    let mut out = Vec::new();
    let mut rest = h;
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), size) {
            let lc_rest = rest.last().unwrap().clone();
            let cand = subset
                .iter()
                .fold(vec![lc_rest], |acc, &i| zmod(&zmul(&acc, &lifted[i]), &modulus));
            let cand = primitive(&zsym(&cand, &modulus));
            let (quot, rem) = zpoly_to_q(&rest).div_rem(&zpoly_to_q(&cand));
            if rem.is_zero() {
                out.push(zpoly_to_q(&cand).monic());
                rest = quot.primitive_integer();
                lifted = lifted
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, u)| u)
                    .collect();
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if rest.len() > 1 {
        out.push(zpoly_to_q(&rest).monic());
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn repeated_linear_factors() {
        let f = q(&[-2025, 1]).pow(2).mul(&q(&[0, 1]));
        let fac = factor_univariate(&f).unwrap();
        assert_eq!(fac.lc, Rat::one());
        assert_eq!(fac.factors, vec![(q(&[-2025, 1]), 2), (q(&[0, 1]), 1)]);
    }

    #[test]
    fn irreducible_quadratic() {
        let fac = factor_univariate(&q(&[1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(q(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        let f = q(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_univariate(&f).unwrap().factors, vec![(f.clone(), 1)]);
        // x^4 + 1 also splits modulo every prime
        let g = q(&[1, 0, 0, 0, 1]);
        let fac = factor_univariate(&f.mul(&g).scale(&Rat::from(-3))).unwrap();
        assert_eq!(fac.lc, Rat::from(-3));
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), f.mul(&g).scale(&Rat::from(-3)));
    }

    #[test]
    fn combination_listing() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(2, 3).len(), 0);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor_univariate(&QPoly::zero()).is_err());
        let c = factor_univariate(&q(&[5])).unwrap();
        assert!(c.factors.is_empty());
        assert_eq!(c.lc, Rat::from(5));
    }
}
