//! Bundled datasets and their file formats.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Rat;
use crate::elliptic::{EllipticError, Section, WeierstrassModel};

/// Environment variable overriding the dataset directory.
pub const DATA_DIR_ENV: &str = "ZARISKI_DATA_DIR";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error("cannot parse {0}: {1}")]
    Parse(PathBuf, serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

/// Directory holding the bundled datasets.
pub fn data_dir() -> PathBuf {
    std::env::var_os(DATA_DIR_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("data"))
}

/// Resolves a file name against the dataset directory unless it names an
/// existing path.
pub fn resolve(name: &str) -> PathBuf {
    let p = PathBuf::from(name);
    if p.exists() {
        p
    } else {
        data_dir().join(name)
    }
}

pub fn load_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, DataError> {
    let text = std::fs::read_to_string(path).map_err(|e| DataError::Io(path.to_path_buf(), e))?;
    serde_json::from_str(&text).map_err(|e| DataError::Parse(path.to_path_buf(), e))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedSection {
    pub name: String,
    #[serde(flatten)]
    pub section: Section,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedCombination {
    pub name: String,
    pub coeffs: Vec<i64>,
}

/// An elliptic surface with a Mordell-Weil basis, integer combinations
/// spanning the narrow lattice, and optional reference Gram matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceData {
    pub model: WeierstrassModel,
    pub basis: Vec<NamedSection>,
    #[serde(default)]
    pub narrow: Vec<NamedCombination>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram_basis: Option<Vec<Vec<Rat>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram_narrow: Option<Vec<Vec<Rat>>>,
}

impl SurfaceData {
    pub fn load(path: &Path) -> Result<Self, DataError> {
        let s: SurfaceData = load_json(path)?;
        for c in &s.narrow {
            if c.coeffs.len() != s.basis.len() {
                return Err(DataError::Invalid(format!(
                    "combination {} has {} coefficients for a basis of size {}",
                    c.name,
                    c.coeffs.len(),
                    s.basis.len()
                )));
            }
        }
        Ok(s)
    }

    pub fn bundled() -> Result<Self, DataError> {
        Self::load(&data_dir().join("paper_surface.json"))
    }

    pub fn basis_sections(&self) -> Vec<Section> {
        self.basis.iter().map(|b| b.section.clone()).collect()
    }

    /// Narrow generators evaluated with the group law.
    pub fn narrow_sections(&self) -> Result<Vec<Section>, EllipticError> {
        let basis = self.basis_sections();
        self.narrow
            .iter()
            .map(|c| self.model.combination(&c.coeffs, &basis))
            .collect()
    }
}
