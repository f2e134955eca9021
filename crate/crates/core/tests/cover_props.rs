use std::collections::BTreeMap;

use proptest::prelude::*;

use zariski_core::config::{Component, ComponentKind, CurveConfiguration};
use zariski_core::cover::{
    cov_table, dihedral_exists, dihedral_exists_brute_force, distinguish, knt_table, partitions_of, CovEntry,
    CovTable, KntData, MWClassTag, TagLattice, VerdictKind,
};

fn classes(max_n: usize) -> impl Strategy<Value = Vec<MWClassTag>> {
    (1usize..=5, 1usize..=max_n).prop_flat_map(|(rank, n)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, rank).prop_map(MWClassTag::new), n)
    })
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![3u64, 5, 7])
}

/// A quartic and one conic per class vector.
fn tagged(vectors: &[Vec<i64>]) -> (CurveConfiguration, TagLattice) {
    let mut components = vec![Component {
        label: "Q".into(),
        kind: ComponentKind::Quartic,
        degree: 4,
        poly: None,
        family: None,
        parameter: None,
        class: None,
    }];
    let mut names = BTreeMap::new();
    for (i, v) in vectors.iter().enumerate() {
        names.insert(format!("c{i}"), v.clone());
        components.push(Component {
            label: format!("C{}", i + 1),
            kind: ComponentKind::Conic,
            degree: 2,
            poly: None,
            family: None,
            parameter: None,
            class: Some(format!("c{i}")),
        });
    }
    let config = CurveConfiguration {
        name: "tagged".into(),
        vars: ["x", "y", "z"].map(String::from).to_vec(),
        chart: None,
        lattice: None,
        components,
        singular_points: Vec::new(),
    };
    (config, TagLattice { rank: vectors[0].len(), names })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Independent search: some permutation of the conics (the quartic fixed)
/// carries every entry of `a` to an equal entry of `b`.
fn identifiable(a: &CovTable, b: &CovTable) -> bool {
    let n = a.labels.len() - 1;
    if n != b.labels.len() - 1 || a.entries.len() != b.entries.len() {
        return false;
    }
    permutations(n).iter().any(|perm| {
        let eta = |i: usize| if i == 0 { 0 } else { perm[i - 1] + 1 };
        a.entries.iter().all(|(k, v)| {
            let mut pairs: Vec<(usize, u64)> =
                k.subset.iter().zip(&k.ramification).map(|(&i, &e)| (eta(i), e)).collect();
            pairs.sort();
            let subset: Vec<usize> = pairs.iter().map(|p| p.0).collect();
            let ram: Vec<u64> = pairs.iter().map(|p| p.1).collect();
            b.get(&subset, &ram) == Some(v)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn criterion_matches_brute_force(c in classes(3), p in prime()) {
        prop_assert_eq!(dihedral_exists(&c, p).unwrap(), dihedral_exists_brute_force(&c, p).unwrap());
    }

    #[test]
    fn criterion_invariances(c in classes(4), p in prime(), seed in any::<prop::sample::Index>(), coord in any::<prop::sample::Index>()) {
        let base = dihedral_exists(&c, p).unwrap();
        let i = seed.index(c.len());
        let mut rotated = c.clone();
        rotated.rotate_left(i);
        prop_assert_eq!(dihedral_exists(&rotated, p).unwrap(), base);
        let mut negated = c.clone();
        negated[i].coords.iter_mut().for_each(|x| *x = -*x);
        prop_assert_eq!(dihedral_exists(&negated, p).unwrap(), base);
        let mut shifted = c.clone();
        let j = coord.index(shifted[i].coords.len());
        shifted[i].coords[j] += p as i64;
        prop_assert_eq!(dihedral_exists(&shifted, p).unwrap(), base);
        let mut torsion = c.clone();
        torsion[i].torsion_bit ^= 1;
        prop_assert_eq!(dihedral_exists(&torsion, p).unwrap(), base);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn distinguish_is_symmetric(
        a in prop::collection::vec(prop::collection::vec(-1i64..=1, 3), 3),
        b in prop::collection::vec(prop::collection::vec(-1i64..=1, 3), 3),
        p in prime(),
    ) {
        let (ca, la) = tagged(&a);
        let (cb, lb) = tagged(&b);
        let ta = cov_table(&ca, &la, p).unwrap();
        let tb = cov_table(&cb, &lb, p).unwrap();
        let ab = distinguish(&ta, &tb).unwrap().verdict;
        prop_assert_eq!(ab, distinguish(&tb, &ta).unwrap().verdict);
        prop_assert_eq!(distinguish(&ta, &ta).unwrap().verdict, VerdictKind::NotDistinguished);
        prop_assert_eq!(ab == VerdictKind::NotDistinguished, identifiable(&ta, &tb));
    }

    #[test]
    fn relabeling_is_invisible(a in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 3), p in prime()) {
        let mut rev = a.clone();
        rev.reverse();
        let (ca, la) = tagged(&a);
        let (cb, lb) = tagged(&rev);
        let v = distinguish(&cov_table(&ca, &la, p).unwrap(), &cov_table(&cb, &lb, p).unwrap()).unwrap();
        prop_assert_eq!(v.verdict, VerdictKind::NotDistinguished);
        prop_assert!(v.witness.is_some());
    }

    #[test]
    fn single_conic_entries(a in prop::collection::vec(prop::collection::vec(-7i64..=7, 3), 3), p in prime()) {
        let (c, l) = tagged(&a);
        let t = cov_table(&c, &l, p).unwrap();
        for (i, v) in a.iter().enumerate() {
            let expect = v.iter().all(|x| x % p as i64 == 0);
            let entry = t.get(&[0, i + 1], &[2, p]).unwrap();
            prop_assert_eq!(*entry == CovEntry::Exists, expect);
        }
    }
}

#[test]
fn quartic_free_entries_are_flagged() {
    let (c, l) = tagged(&[vec![1, 0], vec![1, 0]]);
    let t = cov_table(&c, &l, 3).unwrap();
    assert_eq!(t.get(&[1, 2], &[3, 3]), Some(&CovEntry::OutOfScope));
    assert_eq!(t.get(&[0, 1, 2], &[2, 3, 3]), Some(&CovEntry::Exists));
    assert_eq!(t.get(&[0, 1, 2], &[2, 3, 1]), Some(&CovEntry::Empty));
}

#[test]
fn knt_verdicts_match_exhaustive_search() {
    let knt = KntData::bundled().unwrap();
    for k in 4..=8 {
        let parts = partitions_of(k);
        let tables: Vec<CovTable> = parts.iter().map(|q| knt_table(q, &knt, 3).unwrap()).collect();
        for (i, a) in tables.iter().enumerate() {
            for (j, b) in tables.iter().enumerate() {
                let v = distinguish(a, b).unwrap().verdict;
                assert_eq!(v == VerdictKind::NotDistinguished, i == j, "k = {k}: {:?} vs {:?}", parts[i], parts[j]);
                assert_eq!(identifiable(a, b), i == j);
            }
        }
    }
}
