use num_bigint::BigInt;

use super::EllipticError;
use crate::algebra::Rat;

/// Exact `G = L D L^T` with unit lower-triangular `L`; `None` unless `G` is
/// positive definite.
fn ldl(g: &[Vec<Rat>]) -> Option<(Vec<Vec<Rat>>, Vec<Rat>)> {
    let n = g.len();
    let mut l = vec![vec![Rat::zero(); n]; n];
    let mut d = vec![Rat::zero(); n];
    for j in 0..n {
        let mut dj = g[j][j].clone();
        for k in 0..j {
            dj -= &(&l[j][k] * &l[j][k] * &d[k]);
        }
        if dj <= 0 {
            return None;
        }
        l[j][j] = Rat::one();
        for i in j + 1..n {
            let mut s = g[i][j].clone();
            for k in 0..j {
                s -= &(&l[i][k] * &l[j][k] * &d[k]);
            }
            l[i][j] = &s / &dj;
        }
        d[j] = dj;
    }
    Some((l, d))
}

/// Integers `k` with `d (k - c)^2 <= r`.
fn admissible(c: &Rat, d: &Rat, r: &Rat) -> Vec<i64> {
    let radius = (r / d).to_f64().max(0.0).sqrt();
    let lo = (c.to_f64() - radius).floor() as i64 - 1;
    let hi = (c.to_f64() + radius).ceil() as i64 + 1;
    (lo..=hi)
        .filter(|&k| {
            let diff = Rat::from(k) - c;
            &(d * &(&diff * &diff)) <= r
        })
        .collect()
}

/// All integer vectors of norm exactly 2 under `gram`, in lexicographic
/// order. Uses Fincke-Pohst enumeration over an exact `LDL^T` factorization,
/// which enforces `v_i^2 <= 2 (G^-1)_ii` along the way.
pub fn enumerate_roots(gram: &[Vec<Rat>]) -> Result<Vec<Vec<i64>>, EllipticError> {
    let n = gram.len();
    if gram.iter().any(|r| r.len() != n) {
        return Err(EllipticError::Input("Gram matrix must be square".into()));
    }
    if (0..n).any(|i| (0..n).any(|j| gram[i][j] != gram[j][i])) {
        return Err(EllipticError::Input("Gram matrix must be symmetric".into()));
    }
    let (l, d) = ldl(gram).ok_or(EllipticError::NotPositiveDefinite)?;
    let target = Rat::from(2);
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    search(n, &l, &d, &target, &mut v, &mut out);
    out.retain(|v| v.iter().any(|&x| x != 0));
    out.sort();
    Ok(out)
}

/// Fills coordinates `n-1, ..., 0`; `q(v) = sum_i d_i (v_i + sum_{j>i} l_ji v_j)^2`.
fn search(level: usize, l: &[Vec<Rat>], d: &[Rat], remaining: &Rat, v: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if level == 0 {
        if remaining.is_zero() {
            out.push(v.clone());
        }
        return;
    }
    let i = level - 1;
    let n = v.len();
    let mut c = Rat::zero();
    for j in i + 1..n {
        c -= &(&l[j][i] * &Rat::from(v[j]));
    }
    for k in admissible(&c, &d[i], remaining) {
        let diff = Rat::from(k) - &c;
        let rest = remaining - &(&d[i] * &(&diff * &diff));
        v[i] = k;
        search(i, l, d, &rest, v, out);
    }
    v[i] = 0;
}

/// Squared-norm of `v` under `gram`.
pub fn norm(gram: &[Vec<Rat>], v: &[i64]) -> Rat {
    let mut s = Rat::zero();
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            s += &(g * &Rat::from(BigInt::from(v[i]) * BigInt::from(v[j])));
        }
    }
    s
}
