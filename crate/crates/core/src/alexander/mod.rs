//! Alexander polynomials of quartic-conic configurations whose singular
//! points are nodes and tacnodes. Only tacnodes contribute, and only through
//! evaluation at the point, so every exponent is the corank of an
//! interpolation problem at the tangency points.

mod numeric;

pub use numeric::{rank_certified_numeric, NumericRank};

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{linalg, AlgebraError, ExtElem, Field, QPoly, Rat};
use crate::config::{ComponentKind, CurveConfiguration, SingType, SingularPointRecord};
use crate::geometry::{orbit_columns, GeometryError, PointOrbit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("configuration outside the quartic-conic shape: {0}")]
    Shape(String),
    #[error("singular point {0} lies on the line at infinity of the chart")]
    AtInfinity(String),
    #[error("index out of range: {0}")]
    Range(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// First index `k` at which a tacnode imposes a condition, for `n` conics.
pub fn threshold(n: u32) -> u32 {
    (3 * (n + 2)).div_ceil(2)
}

/// Dimension of the local contribution of a singular point to level `k` of
/// a curve of degree `d = 2n + 4`.
pub fn local_vk_dim(sing: SingType, d: u32, k: u32) -> Result<u32, AlexanderError> {
    if d < 6 || d % 2 != 0 {
        return Err(AlexanderError::Shape(format!("degree {d} is not of the form 2n+4 with n >= 1")));
    }
    if k == 0 || k >= d {
        return Err(AlexanderError::Range(format!("k = {k} for degree {d}")));
    }
    Ok(match sing {
        SingType::A1 => 0,
        SingType::A3 => u32::from(k >= threshold((d - 4) / 2)),
    })
}

/// Shape data of a configuration: degree, number of conics, and whether
/// the quartic is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub d: u32,
    pub n: u32,
    pub quartic: bool,
}

pub fn shape(config: &CurveConfiguration) -> Result<Shape, AlexanderError> {
    let mut quartics = Vec::new();
    let mut n = 0;
    for c in &config.components {
        match c.kind {
            ComponentKind::Quartic => quartics.push(c.label.as_str()),
            ComponentKind::Conic => n += 1,
            k => return Err(AlexanderError::Shape(format!("component {} is a {k}", c.label))),
        }
    }
    if quartics.len() > 1 {
        return Err(AlexanderError::Shape("more than one quartic".into()));
    }
    for r in config.singular_points.iter().filter(|r| r.sing_type == SingType::A3) {
        let conics = r
            .on
            .iter()
            .filter(|l| config.index_of(l).is_some_and(|i| config.components[i].kind == ComponentKind::Conic))
            .count();
        if r.on.len() != 2 || conics != 1 || !r.on.iter().any(|l| quartics.contains(&l.as_str())) {
            return Err(AlexanderError::Shape(format!(
                "tacnode {:?} must lie on the quartic and exactly one conic",
                r.location
            )));
        }
    }
    Ok(Shape { d: config.degree(), n, quartic: !quartics.is_empty() })
}

/// Exponents `(a, b)` of the affine monomials `x^a y^b` with `a + b <= deg`
/// in graded lex order.
pub fn affine_monomials(deg: u32) -> Vec<(u32, u32)> {
    (0..=deg).flat_map(|s| (0..=s).rev().map(move |a| (a, s - a))).collect()
}

/// Affine coordinates of an orbit in the chart `m`, as elements of the
/// orbit's field.
pub fn affine_coords(p: &PointOrbit, m: &[[Rat; 3]; 3]) -> Result<[ExtElem; 2], AlexanderError> {
    let c = p.transform(m).coords_in_field();
    let inv = c[2].inv().ok_or_else(|| AlexanderError::AtInfinity(format!("{p:?}")))?;
    Ok([c[0].mul(&inv), c[1].mul(&inv)])
}

/// Evaluation matrix of the affine monomials of degree at most `deg`
/// (rows) at the given points (columns). A Galois orbit of size `e`
/// contributes `e` rational columns spanning the same space as its
/// conjugate evaluation vectors.
pub fn evaluation_matrix(
    points: &[PointOrbit],
    chart: &[[Rat; 3]; 3],
    deg: u32,
) -> Result<Vec<Vec<Rat>>, AlexanderError> {
    let mons = affine_monomials(deg);
    let values = points
        .iter()
        .map(|p| {
            let [x, y] = affine_coords(p, chart)?;
            Ok(mons.iter().map(|&(a, b)| x.pow(a).mul(&y.pow(b))).collect())
        })
        .collect::<Result<Vec<Vec<ExtElem>>, AlexanderError>>()?;
    let cols = orbit_columns(&values);
    if cols.is_empty() {
        return Ok(vec![Vec::new(); mons.len()]);
    }
    Ok(linalg::transpose(&cols))
}

/// Rank of an evaluation matrix.
pub fn matrix_rank(m: &[Vec<Rat>]) -> usize {
    if m.first().map_or(true, Vec::is_empty) {
        0
    } else {
        linalg::rank(m)
    }
}

fn active_points(config: &CurveConfiguration, s: &Shape, k: u32) -> Result<Vec<PointOrbit>, AlexanderError> {
    let mut out = Vec::new();
    for r in &config.singular_points {
        if local_vk_dim(r.sing_type, s.d, k)? == 1 {
            out.push(r.location.clone());
        }
    }
    Ok(out)
}

fn point_count(points: &[PointOrbit]) -> usize {
    points.iter().map(PointOrbit::degree).sum()
}

/// Exponent of the `k`-th factor: number of active tacnodes minus the rank
/// of the evaluation map on curves of degree `k - 3`.
pub fn ell_k(config: &CurveConfiguration, k: u32) -> Result<usize, AlexanderError> {
    let s = shape(config)?;
    if !s.quartic {
        return Ok(0);
    }
    let pts = active_points(config, &s, k)?;
    if pts.is_empty() {
        return Ok(0);
    }
    let m = evaluation_matrix(&pts, &config.chart_matrix(), k - 3)?;
    Ok(point_count(&pts) - matrix_rank(&m))
}

/// Rational form of `t^2 - 2 cos(2 pi k / d) t + 1`, or the pair `(d, k)`
/// when the cosine is irrational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpandedFactor {
    Rational(QPoly),
    Symbolic { d: u32, k: u32 },
}

pub fn expand_factor(d: u32, k: u32) -> ExpandedFactor {
    let q = d / d.gcd(&k);
    let c = match q {
        1 => 2,
        2 => -2,
        3 => -1,
        4 => 0,
        6 => 1,
        _ => return ExpandedFactor::Symbolic { d, k },
    };
    ExpandedFactor::Rational(QPoly::from_ints(&[1, -c, 1]))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlexFactor {
    pub k: u32,
    pub ell: usize,
}

/// `(t - 1)^(r - 1)` times the product of `Delta_k^ell` over the factors.
#[derive(Clone, Debug, Eq)]
pub struct AlexanderPolynomial {
    pub d: u32,
    pub r: usize,
    pub factors: Vec<AlexFactor>,
}

impl AlexanderPolynomial {
    pub fn is_reduced_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors keyed by the reduced fraction `min(k, d - k) / d`, since
    /// `Delta_k = Delta_{d - k}`.
    pub fn normalized(&self) -> (usize, Vec<((u32, u32), usize)>) {
        let mut v: Vec<((u32, u32), usize)> = self
            .factors
            .iter()
            .map(|f| {
                let k = f.k.min(self.d - f.k);
                let g = k.gcd(&self.d);
                ((k / g, self.d / g), f.ell)
            })
            .collect();
        v.sort();
        let mut merged: Vec<((u32, u32), usize)> = Vec::new();
        for (key, e) in v {
            match merged.last_mut() {
                Some((k2, e2)) if *k2 == key => *e2 += e,
                _ => merged.push((key, e)),
            }
        }
        (self.r, merged)
    }

    /// The reduced polynomial as a rational polynomial, when every factor
    /// expands over the rationals.
    pub fn reduced_expanded(&self) -> Option<QPoly> {
        let mut acc = QPoly::from_ints(&[1]);
        for f in &self.factors {
            match expand_factor(self.d, f.k) {
                ExpandedFactor::Rational(p) => acc = acc.mul(&p.pow(f.ell as u32)),
                ExpandedFactor::Symbolic { .. } => return None,
            }
        }
        Some(acc)
    }

    pub fn reduced_string(&self) -> String {
        match self.reduced_expanded() {
            Some(p) => format_t(&p),
            None => self
                .factors
                .iter()
                .map(|f| {
                    let base = format!("D({},{})", self.d, f.k);
                    if f.ell == 1 { base } else { format!("{base}^{}", f.ell) }
                })
                .collect::<Vec<_>>()
                .join("*"),
        }
    }
}

impl PartialEq for AlexanderPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.reduced_string())
    }
}

/// Renders a polynomial in `t` compactly, e.g. `t^2+1`.
pub fn format_t(p: &QPoly) -> String {
    p.fmt_var("t").replace(' ', "")
}

impl Serialize for AlexanderPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct F {
            k: u32,
            ell: usize,
            expanded: Option<String>,
        }
        #[derive(Serialize)]
        struct A {
            d: u32,
            r: usize,
            factors: Vec<F>,
            reduced: String,
        }
        A {
            d: self.d,
            r: self.r,
            factors: self
                .factors
                .iter()
                .map(|f| F {
                    k: f.k,
                    ell: f.ell,
                    expanded: match expand_factor(self.d, f.k) {
                        ExpandedFactor::Rational(p) => Some(format_t(&p)),
                        ExpandedFactor::Symbolic { .. } => None,
                    },
                })
                .collect(),
            reduced: self.reduced_string(),
        }
        .serialize(s)
    }
}

/// Active range of `k` for a configuration with `n` conics and the quartic.
pub fn active_range(n: u32) -> std::ops::RangeInclusive<u32> {
    threshold(n)..=2 * n + 3
}

/// Alexander polynomial of a configuration whose singular point records are
/// complete. Configurations without the quartic have only nodes and get the
/// trivial reduced polynomial.
pub fn alexander_poly(config: &CurveConfiguration) -> Result<AlexanderPolynomial, AlexanderError> {
    alexander_poly_with(config, |c, k| ell_k(c, k))
}

pub(crate) fn alexander_poly_with(
    config: &CurveConfiguration,
    ell: impl Fn(&CurveConfiguration, u32) -> Result<usize, AlexanderError>,
) -> Result<AlexanderPolynomial, AlexanderError> {
    let s = shape(config)?;
    let r = config.components.len();
    let mut factors = Vec::new();
    if s.quartic && s.n >= 1 {
        for k in active_range(s.n) {
            let e = ell(config, k)?;
            if e > 0 {
                factors.push(AlexFactor { k, ell: e });
            }
        }
    }
    Ok(AlexanderPolynomial { d: s.d, r, factors })
}

/// Alexander polynomial with every rank computed by the numeric path at
/// `bits`, `2 bits` and `4 bits` and checked against the exact rank. The
/// flag is true when every rank was certified.
pub fn alexander_poly_numeric(
    config: &CurveConfiguration,
    bits: u32,
) -> Result<(AlexanderPolynomial, bool), AlexanderError> {
    let certified = std::cell::Cell::new(true);
    let poly = alexander_poly_with(config, |c, k| {
        let s = shape(c)?;
        let pts = active_points(c, &s, k)?;
        if pts.is_empty() {
            return Ok(0);
        }
        let chart = c.chart_matrix();
        let exact = matrix_rank(&evaluation_matrix(&pts, &chart, k - 3)?);
        let num = rank_certified_numeric(&pts, &chart, k - 3, bits, Some(exact))?;
        if !num.certified {
            certified.set(false);
        }
        Ok(point_count(&pts) - num.rank)
    })?;
    Ok((poly, certified.get()))
}

/// Records of a configuration relevant to the computation (the tacnodes).
pub fn tacnodes(config: &CurveConfiguration) -> Vec<&SingularPointRecord> {
    config.singular_points.iter().filter(|r| r.sing_type == SingType::A3).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{identity_chart, Component};

    fn parabola(n: i64) -> Vec<PointOrbit> {
        (1..=n).map(|i| PointOrbit::affine(Rat::from(i), Rat::from(i * i))).collect()
    }

    fn two_conic_config(points: Vec<PointOrbit>) -> CurveConfiguration {
        let comp = |l: &str, kind, degree| Component {
            label: l.into(),
            kind,
            degree,
            poly: None,
            family: None,
            parameter: None,
            class: None,
        };
        let singular_points = points
            .into_iter()
            .enumerate()
            .map(|(i, p)| SingularPointRecord {
                sing_type: SingType::A3,
                on: vec!["Q".into(), if i < 4 { "C1".into() } else { "C2".into() }],
                location: p,
            })
            .collect();
        CurveConfiguration {
            name: "test".into(),
            vars: ["x", "y", "z"].map(String::from).to_vec(),
            chart: None,
            lattice: None,
            components: vec![
                comp("Q", ComponentKind::Quartic, 4),
                comp("C1", ComponentKind::Conic, 2),
                comp("C2", ComponentKind::Conic, 2),
            ],
            singular_points,
        }
    }

    #[test]
    fn local_dimensions() {
        assert_eq!(local_vk_dim(SingType::A3, 8, 6).unwrap(), 1);
        assert_eq!(local_vk_dim(SingType::A3, 8, 5).unwrap(), 0);
        assert_eq!(local_vk_dim(SingType::A1, 8, 7).unwrap(), 0);
        assert!(local_vk_dim(SingType::A3, 7, 5).is_err());
        assert!(local_vk_dim(SingType::A3, 8, 8).is_err());
    }

    #[test]
    fn parabola_ranks() {
        let id = identity_chart();
        let pts = parabola(8);
        let m3 = evaluation_matrix(&pts, &id, 3).unwrap();
        assert_eq!((m3.len(), m3[0].len()), (10, 8));
        assert_eq!(matrix_rank(&m3), 7);
        assert_eq!(matrix_rank(&evaluation_matrix(&pts, &id, 4).unwrap()), 8);
        assert_eq!(matrix_rank(&evaluation_matrix(&[], &id, 2).unwrap()), 0);
    }

    #[test]
    fn conic_coherent_pair() {
        let c = two_conic_config(parabola(8));
        assert_eq!(ell_k(&c, 6).unwrap(), 1);
        assert_eq!(ell_k(&c, 7).unwrap(), 0);
        assert_eq!(ell_k(&c, 5).unwrap(), 0);
        let a = alexander_poly(&c).unwrap();
        assert_eq!(a.reduced_string(), "t^2+1");
        assert_eq!(a.r, 3);
        let no_quartic = c.restrict(&[1, 2]);
        assert!(alexander_poly(&no_quartic).unwrap().is_reduced_trivial());
    }

    #[test]
    fn factor_expansion() {
        assert_eq!(expand_factor(8, 6), ExpandedFactor::Rational(QPoly::from_ints(&[1, 0, 1])));
        assert_eq!(expand_factor(6, 2), ExpandedFactor::Rational(QPoly::from_ints(&[1, 1, 1])));
        assert_eq!(expand_factor(12, 1), ExpandedFactor::Symbolic { d: 12, k: 1 });
    }

    #[test]
    fn normalization_identifies_conjugate_indices() {
        let a = AlexanderPolynomial { d: 8, r: 3, factors: vec![AlexFactor { k: 6, ell: 1 }] };
        let b = AlexanderPolynomial { d: 8, r: 3, factors: vec![AlexFactor { k: 2, ell: 1 }] };
        assert_eq!(a, b);
        let c = AlexanderPolynomial { d: 8, r: 4, factors: vec![AlexFactor { k: 2, ell: 1 }] };
        assert_ne!(a, c);
    }
}
