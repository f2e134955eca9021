//! Exact linear algebra over a [`Field`] and over `Z/p`.

use super::modp::{invmod, mulmod};
use super::Field;

pub type Matrix<F> = Vec<Vec<F>>;

pub fn transpose<F: Clone>(m: &[Vec<F>]) -> Matrix<F> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Rank by fraction-free (Bareiss) elimination. Pivots are the first nonzero
/// entry of each column scanning rows top to bottom.
pub fn rank<F: Field>(m: &[Vec<F>]) -> usize {
    let mut a: Matrix<F> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut prev = a[0][0].one_like();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let prev_inv = prev.inv().unwrap();
        for i in r + 1..rows {
            if a[i][c].is_zero() {
                for j in c + 1..cols {
                    a[i][j] = a[r][c].mul(&a[i][j]).mul(&prev_inv);
                }
                continue;
            }
            for j in c + 1..cols {
                let v = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = v.mul(&prev_inv);
            }
            a[i][c] = a[i][c].zero_like();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square matrix (Bareiss).
pub fn det<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "determinant needs a nonempty square matrix");
    let mut a: Matrix<F> = m.to_vec();
    let mut prev = a[0][0].one_like();
    let mut sign = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return a[0][0].zero_like();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        let prev_inv = prev.inv().unwrap();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.mul(&prev_inv);
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref<F: Field>(a: &mut Matrix<F>) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().unwrap();
        for j in c..cols {
            a[r][j] = a[r][j].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let v = a[i][j].sub(&f.mul(&a[r][j]));
                    a[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel `{v : M v = 0}`.
pub fn kernel<F: Field>(m: &[Vec<F>]) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    if cols == 0 {
        return Vec::new();
    }
    let mut a = m.to_vec();
    let pivots = rref(&mut a);
    let zero = m[0][0].zero_like();
    let one = zero.one_like();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![zero.clone(); cols];
        v[free] = one.clone();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        out.push(v);
    }
    out
}

fn reduce_rows(m: &[Vec<i64>], p: u64) -> Vec<Vec<u64>> {
    m.iter()
        .map(|row| row.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect())
        .collect()
}

fn rref_mod(a: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = invmod(a[r][c], p).unwrap();
        for j in c..cols {
            a[r][j] = mulmod(a[r][j], inv, p);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let f = a[i][c];
                for j in c..cols {
                    a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank of an integer matrix reduced modulo the prime `p`.
pub fn rank_mod_p(m: &[Vec<i64>], p: u64) -> usize {
    let mut a = reduce_rows(m, p);
    rref_mod(&mut a, p).len()
}

/// Basis of the right kernel modulo `p`, entries in `0..p`.
pub fn kernel_mod_p(m: &[Vec<i64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut a = reduce_rows(m, p);
    let pivots = rref_mod(&mut a, p);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[r][free]) % p;
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rat;

    fn mat(rows: &[&[i64]]) -> Matrix<Rat> {
        rows.iter().map(|r| r.iter().map(|&x| Rat::from(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&mat(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        let vander: Matrix<Rat> = (1..=4)
            .map(|x: i64| (0..4).map(|k| Rat::from(x.pow(k))).collect())
            .collect();
        assert_eq!(rank(&vander), 4);
        assert_eq!(det(&vander), Rat::from(12));
        assert_eq!(rank::<Rat>(&[]), 0);
        assert_eq!(rank(&mat(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&mat(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
    }

    #[test]
    fn kernels() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            for row in &m {
                let s: Rat = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(s.is_zero());
            }
        }
        let km = kernel_mod_p(&[vec![1, 1], vec![2, 2]], 2, 3);
        assert_eq!(km, vec![vec![2, 1]]);
        assert_eq!(rank_mod_p(&[vec![3, 6], vec![1, 2]], 3), 1);
    }

    #[test]
    fn determinant_sign() {
        assert_eq!(det(&mat(&[&[0, 1], &[1, 0]])), Rat::from(-1));
        assert_eq!(det(&mat(&[&[2, 3], &[4, 6]])), Rat::zero());
    }
}
