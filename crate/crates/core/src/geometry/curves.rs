use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GeometryError, PointOrbit};
use crate::algebra::{linalg, ExtElem, Field, Poly, Rat};
use crate::data::{data_dir, load_json, DataError};

/// Expands per-orbit value vectors into rational columns. An orbit whose
/// values are `v(a) = sum_i a^i w_i` over `Q(a)` contributes the columns
/// `w_0, ..., w_{d-1}`; they span the same complex space as the `d`
/// conjugates of `v`, so ranks are unchanged.
pub fn orbit_columns(values: &[Vec<ExtElem>]) -> Vec<Vec<Rat>> {
    let mut cols = Vec::new();
    for v in values {
        let Some(first) = v.first() else { continue };
        let d = first.field().degree();
        for i in 0..d {
            cols.push(v.iter().map(|e| e.coeffs()[i].clone()).collect());
        }
    }
    cols
}

/// Exponents of the degree-`deg` monomials in three variables, lex order.
pub(crate) fn forms(deg: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=deg).rev() {
        for b in (0..=deg - a).rev() {
            out.push([a, b, deg - a - b]);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveFit {
    pub exists: bool,
    /// The curve when it is unique up to scale.
    pub curve: Option<Poly>,
}

/// Whether a curve of degree `deg` passes through all points (every
/// conjugate of every orbit), decided by the rank of the evaluation matrix.
pub fn curve_through_points(deg: u32, points: &[PointOrbit], vars: &[String]) -> CurveFit {
    let mons = forms(deg);
    let values: Vec<Vec<ExtElem>> = points
        .iter()
        .map(|p| {
            let c = p.coords_in_field();
            mons.iter()
                .map(|e| c[0].pow(e[0]).mul(&c[1].pow(e[1])).mul(&c[2].pow(e[2])))
                .collect()
        })
        .collect();
    let cols = orbit_columns(&values);
    // rows: points, columns: monomials; the kernel holds the curves
    let m: Vec<Vec<Rat>> = cols;
    let n = mons.len();
    let kernel = if m.is_empty() {
        (0..n).map(|i| (0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect()
    } else {
        linalg::kernel(&m)
    };
    let curve = (kernel.len() == 1).then(|| {
        let terms = mons.iter().zip(&kernel[0]).map(|(e, c)| (e.to_vec(), c.clone()));
        let f = Poly::from_terms(vars, terms).unwrap();
        let lc = f.leading_term().unwrap().1.clone();
        f.scale(&lc.recip().unwrap())
    });
    CurveFit { exists: !kernel.is_empty(), curve }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Family {
    pub name: String,
    /// Quadric in the plane variables and the parameter.
    pub poly: Poly,
}

/// A plane quartic together with one-parameter families of conics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyData {
    pub vars: Vec<String>,
    pub parameter: String,
    pub quartic: Poly,
    pub families: Vec<Family>,
}

impl FamilyData {
    pub fn load(path: &Path) -> Result<Self, DataError> {
        let f: FamilyData = load_json(path)?;
        let mut all = f.vars.clone();
        all.push(f.parameter.clone());
        if f.quartic.vars() != f.vars.as_slice() || f.families.iter().any(|g| g.poly.vars() != all.as_slice()) {
            return Err(DataError::Invalid("family data uses inconsistent variables".into()));
        }
        Ok(f)
    }

    pub fn bundled() -> Result<Self, DataError> {
        Self::load(&data_dir().join("families.json"))
    }

    pub fn names(&self) -> Vec<&str> {
        self.families.iter().map(|f| f.name.as_str()).collect()
    }

    /// The member of family `name` at parameter value `a`.
    pub fn family_instance(&self, name: &str, a: &Rat) -> Result<Poly, GeometryError> {
        let fam = self
            .families
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| GeometryError::UnknownFamily(name.to_string()))?;
        let idx = fam.poly.nvars() - 1;
        Ok(fam.poly.substitute_value(idx, a).drop_var(idx)?)
    }
}

/// Whether a conic is smooth: its symmetric matrix is invertible.
pub fn conic_is_smooth(f: &Poly) -> bool {
    let mut m = vec![vec![Rat::zero(); 3]; 3];
    for (e, c) in f.terms() {
        let idx: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat(i).take(e.0[i] as usize)).collect();
        let (i, j) = (idx[0], idx[1]);
        if i == j {
            m[i][i] = c.clone();
        } else {
            let h = c * &Rat::new(1, 2);
            m[i][j] = h.clone();
            m[j][i] = h;
        }
    }
    !linalg::det(&m).is_zero()
}
