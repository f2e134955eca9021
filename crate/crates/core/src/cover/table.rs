use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{dihedral_exists, CoverError, KntData, MWClassTag, TagLattice};
use crate::alexander::{alexander_poly, alexander_poly_numeric, AlexanderPolynomial};
use crate::config::{ComponentKind, CurveConfiguration};

/// Sorted component indices and the ramification index of each of them.
/// Tables without ramification data use an empty vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TableKey {
    pub subset: Vec<usize>,
    pub ramification: Vec<u64>,
}

impl TableKey {
    /// Image under the component bijection `eta`.
    fn transport(&self, eta: &[usize]) -> TableKey {
        let mut pairs: Vec<(usize, Option<u64>)> = self
            .subset
            .iter()
            .enumerate()
            .map(|(k, &i)| (eta[i], self.ramification.get(k).copied()))
            .collect();
        pairs.sort();
        TableKey {
            subset: pairs.iter().map(|p| p.0).collect(),
            ramification: pairs.iter().filter_map(|p| p.1).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CovEntry {
    Exists,
    Empty,
    /// The existence criterion does not apply (the quartic is unbranched).
    OutOfScope,
}

impl fmt::Display for CovEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CovEntry::Exists => "∃",
            CovEntry::Empty => "∅",
            CovEntry::OutOfScope => "n/a",
        })
    }
}

/// Values indexed by sub-configurations (and ramification types).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table<V> {
    pub labels: Vec<String>,
    pub kinds: Vec<ComponentKind>,
    pub p: Option<u64>,
    pub entries: BTreeMap<TableKey, V>,
}

pub type CovTable = Table<CovEntry>;
pub type AlexTable = Table<AlexanderPolynomial>;

impl<V> Table<V> {
    pub fn get(&self, subset: &[usize], ramification: &[u64]) -> Option<&V> {
        self.entries.get(&TableKey { subset: subset.to_vec(), ramification: ramification.to_vec() })
    }

    fn names(&self, subset: &[usize]) -> Vec<String> {
        subset.iter().map(|&i| self.labels[i].clone()).collect()
    }
}

impl<V: Serialize> Serialize for Table<V> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a, V> {
            subset: Vec<String>,
            #[serde(rename = "type", skip_serializing_if = "Vec::is_empty")]
            ramification: &'a Vec<u64>,
            value: &'a V,
        }
        let entries: Vec<Entry<V>> = self
            .entries
            .iter()
            .map(|(k, v)| Entry { subset: self.names(&k.subset), ramification: &k.ramification, value: v })
            .collect();
        let mut st = s.serialize_struct("Table", 4)?;
        st.serialize_field("components", &self.labels)?;
        st.serialize_field("kinds", &self.kinds)?;
        if let Some(p) = self.p {
            st.serialize_field("p", &p)?;
        }
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

fn subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1u32..(1 << n))
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn check_kinds(config: &CurveConfiguration) -> Result<(), CoverError> {
    let quartics = config.components.iter().filter(|c| c.kind == ComponentKind::Quartic).count();
    if quartics > 1 || config.components.iter().any(|c| !matches!(c.kind, ComponentKind::Quartic | ComponentKind::Conic)) {
        return Err(CoverError::Input("expected one quartic and conics".into()));
    }
    Ok(())
}

fn cov_from_tags(
    labels: Vec<String>,
    kinds: Vec<ComponentKind>,
    tags: &[Option<MWClassTag>],
    p: u64,
    max_size: Option<usize>,
) -> Result<CovTable, CoverError> {
    let n = labels.len();
    let mut entries = BTreeMap::new();
    for subset in subsets(n) {
        if max_size.is_some_and(|m| subset.len() > m) {
            continue;
        }
        let quartic = subset.iter().any(|&i| kinds[i] == ComponentKind::Quartic);
        let conics: Vec<usize> = subset.iter().copied().filter(|&i| kinds[i] == ComponentKind::Conic).collect();
        for branched in subsets(conics.len()) {
            let s: Vec<usize> = branched.iter().map(|&k| conics[k]).collect();
            if max_size.is_some() && s.len() != conics.len() {
                continue;
            }
            let ramification = subset
                .iter()
                .map(|i| match kinds[*i] {
                    ComponentKind::Quartic => 2,
                    _ if s.contains(i) => p,
                    _ => 1,
                })
                .collect();
            let value = if quartic {
                let classes: Vec<MWClassTag> = s.iter().map(|&i| tags[i].clone().unwrap()).collect();
                if dihedral_exists(&classes, p)? {
                    CovEntry::Exists
                } else {
                    CovEntry::Empty
                }
            } else {
                CovEntry::OutOfScope
            };
            entries.insert(TableKey { subset: subset.clone(), ramification }, value);
        }
    }
    Ok(Table { labels, kinds, p: Some(p), entries })
}

/// Dihedral cover existence for every sub-configuration and every choice of
/// branched conics, with ramification 2 along the quartic.
pub fn cov_table(config: &CurveConfiguration, lattice: &TagLattice, p: u64) -> Result<CovTable, CoverError> {
    check_kinds(config)?;
    let tags = config
        .components
        .iter()
        .map(|c| match (c.kind, &c.class) {
            (ComponentKind::Conic, Some(t)) => lattice.resolve(t).map(Some),
            (ComponentKind::Conic, None) => Err(CoverError::Input(format!("conic {} has no class tag", c.label))),
            _ => Ok(None),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let labels = config.components.iter().map(|c| c.label.clone()).collect();
    cov_from_tags(labels, config.kinds(), &tags, p, None)
}

/// Reduced Alexander polynomial of every sub-configuration. The singular
/// point records of `config` must be complete.
pub fn alex_table(config: &CurveConfiguration) -> Result<AlexTable, CoverError> {
    check_kinds(config)?;
    let subs = subsets(config.components.len());
    let values: Vec<AlexanderPolynomial> = subs
        .par_iter()
        .map(|s| alexander_poly(&config.restrict(s)))
        .collect::<Result<_, _>>()?;
    Ok(Table {
        labels: config.components.iter().map(|c| c.label.clone()).collect(),
        kinds: config.kinds(),
        p: None,
        entries: subs
            .into_iter()
            .zip(values)
            .map(|(subset, v)| (TableKey { subset, ramification: Vec::new() }, v))
            .collect(),
    })
}

/// As [`alex_table`] with every rank taken from the numeric path; the flag
/// reports whether all ranks were certified.
pub fn alex_table_numeric(config: &CurveConfiguration, bits: u32) -> Result<(AlexTable, bool), CoverError> {
    check_kinds(config)?;
    let subs = subsets(config.components.len());
    let values: Vec<(AlexanderPolynomial, bool)> = subs
        .par_iter()
        .map(|s| alexander_poly_numeric(&config.restrict(s), bits))
        .collect::<Result<_, _>>()?;
    let certified = values.iter().all(|v| v.1);
    let table = Table {
        labels: config.components.iter().map(|c| c.label.clone()).collect(),
        kinds: config.kinds(),
        p: None,
        entries: subs
            .into_iter()
            .zip(values)
            .map(|(subset, v)| (TableKey { subset, ramification: Vec::new() }, v.0))
            .collect(),
    };
    Ok((table, certified))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Distinguishable,
    NotDistinguished,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Distinguishable => "distinguishable",
            VerdictKind::NotDistinguished => "not_distinguished",
        })
    }
}

/// An entry of the first table whose transport under `eta` fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub eta: Vec<(String, String)>,
    pub subset: Vec<String>,
    #[serde(rename = "type")]
    pub ramification: Vec<u64>,
    pub first: String,
    pub second: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub verdict: VerdictKind,
    /// Component bijection carrying the first table onto the second.
    pub witness: Option<Vec<(String, String)>>,
    pub certificate: Option<Certificate>,
    /// Number of kind-preserving bijections examined.
    pub candidates: usize,
}

/// All bijections `i -> eta[i]` with `kinds_b[eta[i]] == kinds_a[i]`, in
/// lexicographic order.
fn kind_preserving(kinds_a: &[ComponentKind], kinds_b: &[ComponentKind]) -> Vec<Vec<usize>> {
    fn go(i: usize, a: &[ComponentKind], b: &[ComponentKind], used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == a.len() {
            out.push(cur.clone());
            return;
        }
        for j in 0..b.len() {
            if !used[j] && b[j] == a[i] {
                used[j] = true;
                cur.push(j);
                go(i + 1, a, b, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, kinds_a, kinds_b, &mut vec![false; kinds_b.len()], &mut Vec::new(), &mut out);
    out
}

fn violation<V: PartialEq>(a: &Table<V>, b: &Table<V>, eta: &[usize]) -> Option<(TableKey, Option<TableKey>)> {
    for k in a.entries.keys() {
        let image = k.transport(eta);
        match (a.entries.get(k), b.entries.get(&image)) {
            (Some(x), Some(y)) if x == y => {}
            (_, Some(_)) => return Some((k.clone(), Some(image))),
            (_, None) => return Some((k.clone(), None)),
        }
    }
    None
}

/// Searches for a kind-preserving bijection of components transporting
/// every entry of `a` onto an equal entry of `b`.
pub fn distinguish<V: PartialEq + Sync + fmt::Display>(a: &Table<V>, b: &Table<V>) -> Result<Verdict, CoverError> {
    let (mut ka, mut kb) = (a.kinds.clone(), b.kinds.clone());
    ka.sort();
    kb.sort();
    if ka != kb {
        return Err(CoverError::Input("the configurations have different component kinds".into()));
    }
    if a.p != b.p {
        return Err(CoverError::Input("the tables use different primes".into()));
    }
    let etas = kind_preserving(&a.kinds, &b.kinds);
    let pairs = |eta: &[usize]| -> Vec<(String, String)> {
        eta.iter().enumerate().map(|(i, &j)| (a.labels[i].clone(), b.labels[j].clone())).collect()
    };
    if a.entries.len() == b.entries.len() {
        if let Some(eta) = etas.par_iter().find_first(|eta| violation(a, b, eta).is_none()) {
            return Ok(Verdict {
                verdict: VerdictKind::NotDistinguished,
                witness: Some(pairs(eta)),
                certificate: None,
                candidates: etas.len(),
            });
        }
    }
    let certificate = etas.first().and_then(|eta| {
        violation(a, b, eta).map(|(k, image)| Certificate {
            eta: pairs(eta),
            subset: a.names(&k.subset),
            ramification: k.ramification.clone(),
            first: a.entries[&k].to_string(),
            second: image.and_then(|i| b.entries.get(&i)).map(|v| v.to_string()),
        })
    });
    Ok(Verdict { verdict: VerdictKind::Distinguishable, witness: None, certificate, candidates: etas.len() })
}

fn check_partition(k: usize, part: &[usize; 3]) -> Result<(), CoverError> {
    if part.iter().sum::<usize>() != k || part.contains(&0) || part[0] < part[1] || part[1] < part[2] {
        return Err(CoverError::Input(format!(
            "{part:?} is not a descending triple of positive integers summing to {k}"
        )));
    }
    Ok(())
}

/// Pairwise table of the configuration with `part[i]` conics from family
/// `i`: the entries for the quartic together with two branched conics.
pub fn knt_table(part: &[usize; 3], knt: &KntData, p: u64) -> Result<CovTable, CoverError> {
    let lattice = TagLattice::from_knt(knt);
    let mut labels = vec!["Q".to_string()];
    let mut kinds = vec![ComponentKind::Quartic];
    let mut tags = vec![None];
    for (f, &count) in knt.families.iter().zip(part) {
        for j in 0..count {
            labels.push(format!("{}.{}", f.name, j + 1));
            kinds.push(ComponentKind::Conic);
            tags.push(Some(lattice.resolve(&f.name)?));
        }
    }
    let mut t = cov_from_tags(labels, kinds, &tags, p, Some(3))?;
    t.entries.retain(|k, _| k.subset.len() == 3 && k.subset[0] == 0);
    Ok(t)
}

/// Verdicts for every pair of partitions of `k` into three families.
pub fn knt_distinguish(
    k: usize,
    partitions: &[[usize; 3]],
    knt: &KntData,
    p: u64,
) -> Result<Vec<Vec<Verdict>>, CoverError> {
    for part in partitions {
        check_partition(k, part)?;
    }
    let tables: Vec<CovTable> = partitions.iter().map(|q| knt_table(q, knt, p)).collect::<Result<_, _>>()?;
    tables.iter().map(|a| tables.iter().map(|b| distinguish(a, b)).collect()).collect()
}

/// Descending triples of positive integers summing to `k`.
pub fn partitions_of(k: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in (1..=k).rev() {
        for b in (1..=a).rev() {
            if a + b < k && k - a - b <= b {
                out.push([a, b, k - a - b]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transport_sorts() {
        let k = TableKey { subset: vec![0, 1, 3], ramification: vec![2, 5, 1] };
        let t = k.transport(&[0, 3, 2, 1]);
        assert_eq!(t, TableKey { subset: vec![0, 1, 3], ramification: vec![2, 1, 5] });
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (4..=8).map(|k| partitions_of(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 4, 5]);
        assert_eq!(partitions_of(5), vec![[3, 1, 1], [2, 2, 1]]);
    }

    #[test]
    fn knt_small_case() {
        let knt = KntData::bundled().unwrap();
        let v = knt_distinguish(5, &[[3, 1, 1], [2, 2, 1]], &knt, 3).unwrap();
        assert_eq!(v[0][1].verdict, VerdictKind::Distinguishable);
        assert_eq!(v[1][0].verdict, VerdictKind::Distinguishable);
        assert_eq!(v[0][0].verdict, VerdictKind::NotDistinguished);
        assert!(knt_distinguish(5, &[[2, 3, 0]], &knt, 3).is_err());
    }
}
