use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CoverError, MWClassTag};
use crate::data::{data_dir, load_json, DataError, SurfaceData};

/// Named vectors in a fixed basis of the free part of a Mordell-Weil group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TagLattice {
    pub rank: usize,
    pub names: BTreeMap<String, Vec<i64>>,
}

impl TagLattice {
    /// Basis sections are unit vectors; narrow generators are their
    /// recorded combinations.
    pub fn from_surface(s: &SurfaceData) -> Self {
        let rank = s.basis.len();
        let mut names = BTreeMap::new();
        for (i, b) in s.basis.iter().enumerate() {
            names.insert(b.name.clone(), (0..rank).map(|j| i64::from(i == j)).collect());
        }
        for c in &s.narrow {
            names.insert(c.name.clone(), c.coeffs.clone());
        }
        TagLattice { rank, names }
    }

    pub fn from_knt(k: &KntData) -> Self {
        let names = k.families.iter().map(|f| (f.name.clone(), f.class.clone())).collect();
        TagLattice { rank: k.rank, names }
    }

    /// Loads either a surface file or a k-NT description.
    pub fn load(path: &Path) -> Result<Self, DataError> {
        let text = std::fs::read_to_string(path).map_err(|e| DataError::Io(path.to_path_buf(), e))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| DataError::Parse(path.to_path_buf(), e))?;
        if value.get("model").is_some() {
            Ok(Self::from_surface(&SurfaceData::load(path)?))
        } else {
            Ok(Self::from_knt(&KntData::load(path)?))
        }
    }

    /// Coordinates of an integer combination such as `t1+t2` or `2s1-s3`.
    pub fn resolve(&self, expr: &str) -> Result<MWClassTag, CoverError> {
        let mut v = vec![0i64; self.rank];
        for (c, name) in parse_tag(expr)? {
            let w = self
                .names
                .get(&name)
                .ok_or_else(|| CoverError::Input(format!("unknown class name {name:?} in {expr:?}")))?;
            for (x, y) in v.iter_mut().zip(w) {
                *x += c * y;
            }
        }
        Ok(MWClassTag::new(v))
    }
}

/// Splits `2t1 - t2 + s3` into `[(2, "t1"), (-1, "t2"), (1, "s3")]`.
pub fn parse_tag(expr: &str) -> Result<Vec<(i64, String)>, CoverError> {
    let bad = || CoverError::Input(format!("cannot parse class tag {expr:?}"));
    let words: Vec<&str> = expr.split_whitespace().collect();
    let word_char = |c: Option<char>| c.is_some_and(|c| c.is_ascii_alphanumeric() || c == '_');
    if words.windows(2).any(|w| word_char(w[0].chars().last()) && word_char(w[1].chars().next())) {
        return Err(bad());
    }
    let s: String = words.concat();
    if s.is_empty() {
        return Err(bad());
    }
    let mut out = Vec::new();
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let mut sign = 1;
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
        } else if let Some(r) = rest.strip_prefix('-') {
            sign = -1;
            rest = r;
        } else if !out.is_empty() {
            return Err(bad());
        }
        let digits = rest.chars().take_while(char::is_ascii_digit).count();
        let coeff = if digits == 0 { 1 } else { rest[..digits].parse::<i64>().map_err(|_| bad())? };
        rest = rest[digits..].strip_prefix('*').unwrap_or(&rest[digits..]);
        let len = rest.find(['+', '-']).unwrap_or(rest.len());
        let name = &rest[..len];
        if !name.starts_with(|c: char| c.is_ascii_alphabetic())
            || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return Err(bad());
        }
        out.push((sign * coeff, name.to_string()));
        rest = &rest[len..];
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KntFamily {
    pub name: String,
    /// Class of either half of the pulled-back conic.
    pub class: Vec<i64>,
}

/// Abstract description of the k-NT configurations: only the class of
/// each conic family is recorded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KntData {
    pub name: String,
    pub rank: usize,
    pub torsion: u32,
    pub families: Vec<KntFamily>,
}

impl KntData {
    pub fn load(path: &Path) -> Result<Self, DataError> {
        let k: KntData = load_json(path)?;
        if k.families.len() != 3 || k.families.iter().any(|f| f.class.len() != k.rank) {
            return Err(DataError::Invalid("k-NT data needs three families in the stated rank".into()));
        }
        Ok(k)
    }

    pub fn bundled() -> Result<Self, DataError> {
        Self::load(&data_dir().join("knt.json"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tag_syntax() {
        assert_eq!(parse_tag("t1").unwrap(), vec![(1, "t1".to_string())]);
        assert_eq!(
            parse_tag("2t1 - t2 + 3*s4").unwrap(),
            vec![(2, "t1".into()), (-1, "t2".into()), (3, "s4".into())]
        );
        assert_eq!(parse_tag("-t3").unwrap(), vec![(-1, "t3".into())]);
        assert!(parse_tag("").is_err());
        assert!(parse_tag("t1 t2").is_err());
        assert!(parse_tag("2").is_err());
    }

    #[test]
    fn bundled_lattice() {
        let l = TagLattice::from_surface(&SurfaceData::bundled().unwrap());
        assert_eq!(l.resolve("t1").unwrap().coords, vec![2, -1, 0, 0, 0]);
        assert_eq!(l.resolve("t1+t2").unwrap().coords, vec![1, 1, -1, -1, 0]);
        assert!(l.resolve("t9").is_err());
    }
}
