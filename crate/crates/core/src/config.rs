//! Plane curve configurations: components, singular point records and the
//! affine chart used by the Alexander polynomial computation.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Poly, Rat};
use crate::data::{load_json, DataError};
use crate::geometry::PointOrbit;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Quartic,
    Conic,
    Line,
    Other,
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ComponentKind::Quartic => "quartic",
            ComponentKind::Conic => "conic",
            ComponentKind::Line => "line",
            ComponentKind::Other => "other",
        };
        f.write_str(s)
    }
}

/// An irreducible component. `poly` is homogeneous in the configuration's
/// three variables; abstract configurations omit it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub label: String,
    pub kind: ComponentKind,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Poly>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Rat>,
    /// Mordell-Weil class tag such as `"t1"` or `"t1+t2"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SingType {
    A1,
    A3,
}

/// A singular point (or a Galois orbit of them) together with the labels of
/// the components through it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPointRecord {
    #[serde(rename = "type")]
    pub sing_type: SingType,
    pub on: Vec<String>,
    pub location: PointOrbit,
}

impl SingularPointRecord {
    /// Number of geometric points represented.
    pub fn count(&self) -> usize {
        self.location.degree()
    }
}

fn default_vars() -> Vec<String> {
    ["x", "y", "z"].map(String::from).to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveConfiguration {
    pub name: String,
    #[serde(default = "default_vars")]
    pub vars: Vec<String>,
    /// Rows are linear forms giving new coordinates `(X, Y, Z)`; the affine
    /// chart is `Z != 0` and the last row is the line at infinity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chart: Option<[[Rat; 3]; 3]>,
    /// Lattice file against which class tags are resolved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<String>,
    pub components: Vec<Component>,
    #[serde(default)]
    pub singular_points: Vec<SingularPointRecord>,
}

pub fn identity_chart() -> [[Rat; 3]; 3] {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { Rat::one() } else { Rat::zero() }))
}

impl CurveConfiguration {
    pub fn load(path: &Path) -> Result<Self, DataError> {
        let c: CurveConfiguration = load_json(path)?;
        c.validate().map_err(DataError::Invalid)?;
        Ok(c)
    }

    /// Structural checks: labels, degrees, variables and record references.
    pub fn validate(&self) -> Result<(), String> {
        if self.vars.len() != 3 {
            return Err("a configuration needs exactly three homogeneous variables".into());
        }
        for (i, c) in self.components.iter().enumerate() {
            if self.components[..i].iter().any(|d| d.label == c.label) {
                return Err(format!("duplicate component label {}", c.label));
            }
            let expected = match c.kind {
                ComponentKind::Quartic => Some(4),
                ComponentKind::Conic => Some(2),
                ComponentKind::Line => Some(1),
                ComponentKind::Other => None,
            };
            if expected.is_some_and(|e| e != c.degree) {
                return Err(format!("component {} is a {} of degree {}", c.label, c.kind, c.degree));
            }
            if let Some(p) = &c.poly {
                if p.vars() != self.vars.as_slice() {
                    return Err(format!("component {} uses variables {:?}", c.label, p.vars()));
                }
                if !p.is_homogeneous() || p.total_degree() != Some(c.degree) {
                    return Err(format!("component {} is not homogeneous of degree {}", c.label, c.degree));
                }
            }
        }
        for r in &self.singular_points {
            if let Some(l) = r.on.iter().find(|l| self.index_of(l).is_none()) {
                return Err(format!("singular point refers to unknown component {l}"));
            }
        }
        if let Some(m) = &self.chart {
            if crate::algebra::linalg::det(&m.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).is_zero() {
                return Err("chart matrix is singular".into());
            }
        }
        Ok(())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.components.iter().position(|c| c.label == label)
    }

    pub fn degree(&self) -> u32 {
        self.components.iter().map(|c| c.degree).sum()
    }

    pub fn kinds(&self) -> Vec<ComponentKind> {
        self.components.iter().map(|c| c.kind).collect()
    }

    pub fn chart_matrix(&self) -> [[Rat; 3]; 3] {
        self.chart.clone().unwrap_or_else(identity_chart)
    }

    /// The line at infinity of the chart as a linear form.
    pub fn line_at_infinity(&self) -> Poly {
        let m = self.chart_matrix();
        let mut l = Poly::zero_in(&self.vars);
        for (j, c) in m[2].iter().enumerate() {
            l = l.add(&Poly::var_in(&self.vars, &self.vars[j]).unwrap().scale(c));
        }
        l
    }

    pub fn has_equations(&self) -> bool {
        self.components.iter().all(|c| c.poly.is_some())
    }

    /// The sub-configuration on the components `subset` (indices in
    /// increasing order). Records survive when all their components do.
    pub fn restrict(&self, subset: &[usize]) -> CurveConfiguration {
        let components: Vec<Component> = subset.iter().map(|&i| self.components[i].clone()).collect();
        let keep = |r: &SingularPointRecord| r.on.iter().all(|l| components.iter().any(|c| &c.label == l));
        CurveConfiguration {
            name: self.name.clone(),
            vars: self.vars.clone(),
            chart: self.chart.clone(),
            lattice: self.lattice.clone(),
            singular_points: self.singular_points.iter().filter(|r| keep(r)).cloned().collect(),
            components,
        }
    }
}
