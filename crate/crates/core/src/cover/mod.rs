//! Existence of dihedral covers branched along sub-configurations, the
//! tables indexed by sub-configurations and ramification types, and the
//! search for a component bijection identifying two tables.

mod lattice;
mod table;

pub use lattice::{parse_tag, KntData, TagLattice};
pub use table::{
    alex_table, alex_table_numeric, cov_table, distinguish, knt_distinguish, knt_table, partitions_of,
    AlexTable, Certificate, CovEntry, CovTable,
    Table, TableKey, Verdict, VerdictKind,
};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alexander::AlexanderError;
use crate::algebra::{is_prime, linalg};
use crate::data::DataError;

#[derive(Debug, Error)]
pub enum CoverError {
    #[error("input error: {0}")]
    Input(String),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Data(#[from] DataError),
}

/// Class of a conic in the Mordell-Weil group: coordinates of the free
/// part and the torsion bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MWClassTag {
    pub coords: Vec<i64>,
    #[serde(default)]
    pub torsion_bit: u8,
}

impl MWClassTag {
    pub fn new(coords: Vec<i64>) -> Self {
        MWClassTag { coords, torsion_bit: 0 }
    }
}

/// Kernel enumeration is used when the kernel has at most this many vectors.
pub const ENUMERATION_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMethod {
    Auto,
    Enumerate,
    InclusionExclusion,
}

fn check_input(classes: &[MWClassTag], p: u64) -> Result<usize, CoverError> {
    if p == 2 || !is_prime(p) {
        return Err(CoverError::NotOddPrime(p));
    }
    let Some(first) = classes.first() else {
        return Err(CoverError::Input("no classes given".into()));
    };
    let rank = first.coords.len();
    if classes.iter().any(|c| c.coords.len() != rank) {
        return Err(CoverError::Input("class tags have different lengths".into()));
    }
    Ok(rank)
}

/// The matrix whose columns are the class coordinates.
fn class_matrix(classes: &[MWClassTag], rank: usize) -> Vec<Vec<i64>> {
    (0..rank).map(|r| classes.iter().map(|c| c.coords[r]).collect()).collect()
}

/// Whether positive integers `a_i < p` exist with `sum a_i c_i` divisible
/// by `p` in the free part. The torsion bit plays no role for odd `p`.
pub fn dihedral_exists(classes: &[MWClassTag], p: u64) -> Result<bool, CoverError> {
    dihedral_exists_with(classes, p, KernelMethod::Auto)
}

pub fn dihedral_exists_with(classes: &[MWClassTag], p: u64, method: KernelMethod) -> Result<bool, CoverError> {
    let rank = check_input(classes, p)?;
    let n = classes.len();
    let m = class_matrix(classes, rank);
    let basis = if rank == 0 {
        (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect()
    } else {
        linalg::kernel_mod_p(&m, n, p)
    };
    let small = (basis.len() as f64) * (p as f64).log10() <= (ENUMERATION_LIMIT as f64).log10() + 1e-9;
    let enumerate = match method {
        KernelMethod::Auto => small,
        KernelMethod::Enumerate => true,
        KernelMethod::InclusionExclusion => false,
    };
    Ok(if enumerate {
        enumerate_kernel(&basis, n, p)
    } else {
        count_nowhere_zero(&m, n, p) > BigInt::zero()
    })
}

fn enumerate_kernel(basis: &[Vec<u64>], n: usize, p: u64) -> bool {
    let dim = basis.len();
    let mut coeffs = vec![0u64; dim];
    loop {
        let mut v = vec![0u64; n];
        for (c, b) in coeffs.iter().zip(basis) {
            for (x, y) in v.iter_mut().zip(b) {
                *x = (*x + c * y) % p;
            }
        }
        if v.iter().all(|&x| x != 0) {
            return true;
        }
        // next coefficient vector
        let mut i = 0;
        loop {
            if i == dim {
                return false;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// Number of kernel vectors with no zero entry, by inclusion-exclusion over
/// the sets of coordinates forced to vanish.
fn count_nowhere_zero(m: &[Vec<i64>], n: usize, p: u64) -> BigInt {
    let mut total = BigInt::zero();
    for mask in 0u64..(1 << n) {
        let mut rows = m.to_vec();
        for i in (0..n).filter(|i| mask >> i & 1 == 1) {
            rows.push((0..n).map(|j| i64::from(i == j)).collect());
        }
        let dim = n - linalg::rank_mod_p(&rows, p);
        let term = num_traits::pow(BigInt::from(p), dim);
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Exhaustive search over `{1, ..., p-1}^n`, for testing.
pub fn dihedral_exists_brute_force(classes: &[MWClassTag], p: u64) -> Result<bool, CoverError> {
    let rank = check_input(classes, p)?;
    let n = classes.len();
    let mut a = vec![1u64; n];
    loop {
        let ok = (0..rank).all(|r| {
            let s: i128 = (0..n).map(|i| a[i] as i128 * classes[i].coords[r] as i128).sum();
            s.rem_euclid(p as i128) == 0
        });
        if ok {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == n {
                return Ok(false);
            }
            a[i] += 1;
            if a[i] < p {
                break;
            }
            a[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tag(v: &[i64]) -> MWClassTag {
        MWClassTag::new(v.to_vec())
    }

    #[test]
    fn bundled_examples() {
        let t1 = tag(&[1, 0, 0]);
        let t2 = tag(&[0, 1, 0]);
        let t12 = tag(&[1, 1, 0]);
        for p in [3, 5, 7] {
            assert!(dihedral_exists(&[t1.clone(), t1.clone()], p).unwrap());
            assert!(!dihedral_exists(&[t1.clone(), t2.clone()], p).unwrap());
            assert!(!dihedral_exists(&[t1.clone()], p).unwrap());
        }
        assert!(dihedral_exists(&[t1, t2, t12], 3).unwrap());
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(dihedral_exists(&[tag(&[1])], 2).is_err());
        assert!(dihedral_exists(&[tag(&[1])], 9).is_err());
        assert!(dihedral_exists(&[], 3).is_err());
    }

    #[test]
    fn methods_agree() {
        let classes = [tag(&[1, 2, 0]), tag(&[2, -1, 1]), tag(&[0, 1, 3]), tag(&[3, 3, 3])];
        for p in [3, 5, 7, 11] {
            let a = dihedral_exists_with(&classes, p, KernelMethod::Enumerate).unwrap();
            let b = dihedral_exists_with(&classes, p, KernelMethod::InclusionExclusion).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, dihedral_exists_brute_force(&classes, p).unwrap());
        }
    }
}
