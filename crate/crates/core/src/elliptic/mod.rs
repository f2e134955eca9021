//! Elliptic surfaces `y^2 = x^3 + a2 x^2 + a4 x + a6` over `Q(t)`.

mod fibers;
mod height;
mod roots;

pub use fibers::{classify_fibers, FiberReport, Kodaira};
pub use height::{
    component_at, contribution, gram_matrix, height, height_with, intersect_sections,
    intersect_with_zero, is_narrow,
};
pub use roots::{enumerate_roots, norm};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Poly, QPoly, Rat, RatFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EllipticError {
    #[error("model is not an elliptic fibration (discriminant vanishes identically)")]
    NotElliptic,
    #[error("model not minimal at place {0}")]
    NotMinimal(String),
    #[error("coefficient a{0} has degree above the bound {1}")]
    DegreeBound(u32, usize),
    #[error("section is not on the curve")]
    NotOnCurve,
    #[error("non-minimal section data: odd pole order at {0}")]
    OddPole(String),
    #[error("self-intersection not defined for distinct-section pairing")]
    SelfIntersection,
    #[error("contribution unavailable for fiber type {0} at {1}")]
    ContributionUnavailable(String, String),
    #[error("Gram matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Weierstrass model over `Q(t)` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeierstrassModel {
    pub a2: QPoly,
    pub a4: QPoly,
    pub a6: QPoly,
    pub chi: u32,
}

impl WeierstrassModel {
    pub fn new(a2: QPoly, a4: QPoly, a6: QPoly, chi: u32) -> Result<Self, EllipticError> {
        if chi == 0 {
            return Err(EllipticError::Input("euler characteristic must be positive".into()));
        }
        for (i, a) in [(1u32, &a2), (2, &a4), (3, &a6)] {
            let bound = (2 * i * chi) as usize;
            if a.degree().unwrap_or(0) > bound {
                return Err(EllipticError::DegreeBound(2 * i, bound));
            }
        }
        let m = WeierstrassModel { a2, a4, a6, chi };
        if m.invariants_unchecked().2.is_zero() {
            return Err(EllipticError::NotElliptic);
        }
        Ok(m)
    }

    fn invariants_unchecked(&self) -> (QPoly, QPoly, QPoly) {
        let c = |n: i64| QPoly::constant(Rat::from(n));
        let (a2, a4, a6) = (&self.a2, &self.a4, &self.a6);
        let a2sq = a2.mul(a2);
        let c4 = c(16).mul(&a2sq).sub(&c(48).mul(a4));
        let c6 = c(-64)
            .mul(&a2sq.mul(a2))
            .add(&c(288).mul(&a2.mul(a4)))
            .sub(&c(864).mul(a6));
        let delta = c(-4)
            .mul(&a2sq.mul(a2).mul(a6))
            .add(&a2sq.mul(&a4.mul(a4)))
            .add(&c(18).mul(&a2.mul(a4).mul(a6)))
            .sub(&c(4).mul(&a4.pow(3)))
            .sub(&c(27).mul(&a6.mul(a6)))
            .scale(&Rat::from(16));
        (c4, c6, delta)
    }

    /// `(c4, c6, Delta)` with `1728 Delta = c4^3 - c6^2`.
    pub fn invariants(&self) -> Result<(QPoly, QPoly, QPoly), EllipticError> {
        let inv = self.invariants_unchecked();
        if inv.2.is_zero() {
            return Err(EllipticError::NotElliptic);
        }
        Ok(inv)
    }

    /// The model in the chart `u = 1/t`: `a_i(u) -> u^(2i chi) a_i(1/u)`.
    pub fn chart_at_infinity(&self) -> WeierstrassModel {
        let tr = |a: &QPoly, w: u32| -> QPoly {
            let f = RatFunc::from_poly(a.clone()).invert_variable((w * self.chi) as i64);
            debug_assert!(f.is_poly());
            f.num().clone()
        };
        WeierstrassModel {
            a2: tr(&self.a2, 2),
            a4: tr(&self.a4, 4),
            a6: tr(&self.a6, 6),
            chi: self.chi,
        }
    }

    /// Right-hand side `x^3 + a2 x^2 + a4 x + a6`.
    pub fn rhs(&self, x: &RatFunc) -> RatFunc {
        let a = |p: &QPoly| RatFunc::from_poly(p.clone());
        x.mul(x).mul(x).add(&a(&self.a2).mul(&x.mul(x))).add(&a(&self.a4).mul(x)).add(&a(&self.a6))
    }

    /// Partial derivative in `x`: `3x^2 + 2 a2 x + a4`.
    pub fn rhs_dx(&self, x: &RatFunc) -> RatFunc {
        let a = |p: &QPoly| RatFunc::from_poly(p.clone());
        x.mul(x)
            .scale(&Rat::from(3))
            .add(&a(&self.a2).mul(x).scale(&Rat::from(2)))
            .add(&a(&self.a4))
    }

    pub fn contains(&self, p: &Section) -> bool {
        match p {
            Section::Zero => true,
            Section::Point { x, y } => y.mul(y) == self.rhs(x),
        }
    }

    fn check(&self, p: &Section) -> Result<(), EllipticError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(EllipticError::NotOnCurve)
        }
    }

    /// Chord-tangent addition.
    pub fn add(&self, p: &Section, q: &Section) -> Result<Section, EllipticError> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &Section, q: &Section) -> Section {
        let (x1, y1, x2, y2) = match (p, q) {
            (Section::Zero, _) => return q.clone(),
            (_, Section::Zero) => return p.clone(),
            (Section::Point { x: x1, y: y1 }, Section::Point { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if y1 == &y2.neg() {
                return Section::Zero;
            }
            self.rhs_dx(x1).div(&y1.scale(&Rat::from(2))).unwrap()
        } else {
            y2.sub(y1).div(&x2.sub(x1)).unwrap()
        };
        let a2 = RatFunc::from_poly(self.a2.clone());
        let x3 = lambda.mul(&lambda).sub(&a2).sub(x1).sub(x2);
        let y3 = lambda.mul(&x3.sub(x1)).add(y1).neg();
        Section::Point { x: x3, y: y3 }
    }

    pub fn neg(&self, p: &Section) -> Section {
        p.neg()
    }

    pub fn sub(&self, p: &Section, q: &Section) -> Result<Section, EllipticError> {
        self.add(p, &q.neg())
    }

    /// `n P` by double-and-add.
    pub fn scalar_mul(&self, n: i64, p: &Section) -> Result<Section, EllipticError> {
        self.check(p)?;
        let mut base = if n < 0 { p.neg() } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = Section::Zero;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    /// `sum c_i P_i`.
    pub fn combination(&self, coeffs: &[i64], basis: &[Section]) -> Result<Section, EllipticError> {
        if coeffs.len() != basis.len() {
            return Err(EllipticError::Input("coefficient count differs from basis size".into()));
        }
        let mut acc = Section::Zero;
        for (c, p) in coeffs.iter().zip(basis) {
            if *c != 0 {
                acc = self.add_unchecked(&acc, &self.scalar_mul(*c, p)?);
            }
        }
        Ok(acc)
    }
}

/// A section of the fibration: the zero section or a point over `Q(t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Section {
    Zero,
    Point { x: RatFunc, y: RatFunc },
}

impl Section {
    pub fn new(x: RatFunc, y: RatFunc) -> Self {
        Section::Point { x, y }
    }

    pub fn neg(&self) -> Section {
        match self {
            Section::Zero => Section::Zero,
            Section::Point { x, y } => Section::Point {
                x: x.clone(),
                y: y.neg(),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Section::Zero)
    }

    pub fn x(&self) -> Option<&RatFunc> {
        match self {
            Section::Zero => None,
            Section::Point { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&RatFunc> {
        match self {
            Section::Zero => None,
            Section::Point { y, .. } => Some(y),
        }
    }

    /// Coordinates in the chart `u = 1/t`: `(u^2 x(1/u), u^3 y(1/u))` scaled by `chi`.
    pub fn chart_at_infinity(&self, chi: u32) -> Section {
        match self {
            Section::Zero => Section::Zero,
            Section::Point { x, y } => Section::Point {
                x: x.invert_variable(2 * chi as i64),
                y: y.invert_variable(3 * chi as i64),
            },
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PolyInput {
    Poly(Poly),
    Expr(String),
}

impl PolyInput {
    fn into_qpoly(self) -> Result<QPoly, String> {
        let p = match self {
            PolyInput::Poly(p) => p,
            PolyInput::Expr(s) => crate::algebra::parse_poly(&s, &["t"]).map_err(|e| e.to_string())?,
        };
        match p.nvars() {
            0 => Ok(QPoly::constant(p.constant_value().unwrap())),
            1 => p.to_qpoly(0).map_err(|e| e.to_string()),
            _ => Err("Weierstrass coefficients must be univariate in t".into()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ModelRepr {
    a2: PolyInput,
    a4: PolyInput,
    a6: PolyInput,
    chi: u32,
}

impl Serialize for WeierstrassModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let vars = vec!["t".to_string()];
        let p = |a: &QPoly| PolyInput::Poly(Poly::from_qpoly(&vars, 0, a));
        ModelRepr {
            a2: p(&self.a2),
            a4: p(&self.a4),
            a6: p(&self.a6),
            chi: self.chi,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeierstrassModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = ModelRepr::deserialize(d)?;
        WeierstrassModel::new(
            r.a2.into_qpoly().map_err(D::Error::custom)?,
            r.a4.into_qpoly().map_err(D::Error::custom)?,
            r.a6.into_qpoly().map_err(D::Error::custom)?,
            r.chi,
        )
        .map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SectionRepr {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    x: Option<RatFunc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    y: Option<RatFunc>,
}

impl Serialize for Section {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SectionRepr {
            x: self.x().cloned(),
            y: self.y().cloned(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Section {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match SectionRepr::deserialize(d)? {
            SectionRepr { x: None, y: None } => Ok(Section::Zero),
            SectionRepr {
                x: Some(x),
                y: Some(y),
            } => Ok(Section::Point { x, y }),
            _ => Err(D::Error::custom("a finite section needs both x and y")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn constant_curve_invariants() {
        let m = WeierstrassModel::new(QPoly::zero(), q(&[1]), QPoly::zero(), 1).unwrap();
        let (c4, c6, d) = m.invariants().unwrap();
        assert_eq!(d, q(&[-64]));
        assert_eq!(c4.pow(3).sub(&c6.mul(&c6)), d.scale(&Rat::from(1728)));
        let m = WeierstrassModel::new(QPoly::zero(), QPoly::zero(), q(&[0, 1]), 1).unwrap();
        assert_eq!(m.invariants().unwrap().2, q(&[0, 0, -432]));
        assert_eq!(
            WeierstrassModel::new(QPoly::zero(), QPoly::zero(), QPoly::zero(), 1),
            Err(EllipticError::NotElliptic)
        );
    }

    #[test]
    fn inverse_law() {
        let m = WeierstrassModel::new(QPoly::zero(), QPoly::zero(), q(&[1, 0, 0, 1]), 1).unwrap();
        // (0, ?) not rational; use P = (-t, 1) on y^2 = x^3 + t^3 + 1
        let p = Section::new(RatFunc::from_poly(q(&[0, -1])), RatFunc::one());
        assert!(m.contains(&p));
        assert_eq!(m.add(&p, &p.neg()).unwrap(), Section::Zero);
        let p3 = m.scalar_mul(3, &p).unwrap();
        let p2 = m.add(&p, &p).unwrap();
        assert_eq!(m.add(&p2, &p).unwrap(), p3);
        assert!(m.contains(&p3));
        let bad = Section::new(RatFunc::one(), RatFunc::one());
        assert_eq!(m.add(&bad, &p), Err(EllipticError::NotOnCurve));
    }
}
