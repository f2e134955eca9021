use std::fmt;
use std::sync::Arc;

use super::{factor_univariate, AlgebraError, Field, QPoly, Rat};

/// A simple algebraic extension `Q[a]/(m(a))` with `m` monic irreducible.
#[derive(PartialEq, Eq, Debug)]
pub struct ExtField {
    minpoly: QPoly,
}

impl ExtField {
    /// Builds the field without re-certifying irreducibility. Callers pass
    /// factors produced by [`factor_univariate`].
    pub fn new(minpoly: QPoly) -> Result<Arc<Self>, AlgebraError> {
        match minpoly.degree() {
            None | Some(0) => Err(AlgebraError::Input(
                "minimal polynomial must have positive degree".into(),
            )),
            Some(_) if !minpoly.is_monic() => {
                Err(AlgebraError::Input("minimal polynomial must be monic".into()))
            }
            Some(_) => Ok(Arc::new(ExtField { minpoly })),
        }
    }

    /// Like [`ExtField::new`] but certifies irreducibility by factoring.
    pub fn new_checked(minpoly: QPoly) -> Result<Arc<Self>, AlgebraError> {
        let fac = factor_univariate(&minpoly)?;
        if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(AlgebraError::Input(format!(
                "minimal polynomial {minpoly} is reducible"
            )));
        }
        Self::new(minpoly)
    }

    /// `Q` itself, presented as `Q[a]/(a)`.
    pub fn rationals() -> Arc<Self> {
        Arc::new(ExtField { minpoly: QPoly::x() })
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }
}

/// Element of an [`ExtField`], stored as a polynomial in the generator of
/// degree below the field degree.
#[derive(Clone)]
pub struct ExtElem {
    field: Arc<ExtField>,
    coeffs: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtOp {
    Add,
    Mul,
    Inv,
}

impl ExtElem {
    pub fn from_poly(field: &Arc<ExtField>, p: &QPoly) -> Self {
        let r = p.rem(field.minpoly());
        let mut coeffs = r.into_coeffs();
        coeffs.resize(field.degree(), Rat::zero());
        ExtElem { field: field.clone(), coeffs }
    }

    pub fn from_rat(field: &Arc<ExtField>, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[0] = r;
        ExtElem { field: field.clone(), coeffs }
    }

    /// The class of the generator `a`.
    pub fn generator(field: &Arc<ExtField>) -> Self {
        Self::from_poly(field, &QPoly::x())
    }

    pub fn field(&self) -> &Arc<ExtField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn to_poly(&self) -> QPoly {
        QPoly::new(self.coeffs.clone())
    }

    /// The rational value when the element lies in the prime field.
    pub fn to_rat(&self) -> Option<Rat> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| self.coeffs[0].clone())
    }

    pub fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field == other.field
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.same_field(other) {
            Ok(())
        } else {
            Err(AlgebraError::FieldMismatch)
        }
    }

    /// Checked field arithmetic; `b` is ignored for [`ExtOp::Inv`].
    pub fn arith(a: &Self, b: &Self, op: ExtOp) -> Result<Self, AlgebraError> {
        match op {
            ExtOp::Add => {
                a.check(b)?;
                Ok(Field::add(a, b))
            }
            ExtOp::Mul => {
                a.check(b)?;
                Ok(Field::mul(a, b))
            }
            ExtOp::Inv => Field::inv(a).ok_or(AlgebraError::DivisionByZero),
        }
    }
}

impl PartialEq for ExtElem {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other) && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] mod ({})", self.to_poly().fmt_var("a"), self.field.minpoly.fmt_var("a"))
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().fmt_var("a"))
    }
}

impl Field for ExtElem {
    fn zero_like(&self) -> Self {
        ExtElem {
            field: self.field.clone(),
            coeffs: vec![Rat::zero(); self.field.degree()],
        }
    }

    fn one_like(&self) -> Self {
        ExtElem::from_rat(&self.field, Rat::one())
    }

    fn from_rat_like(&self, r: &Rat) -> Self {
        ExtElem::from_rat(&self.field, r.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn add(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "extension field mismatch");
        ExtElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "extension field mismatch");
        ExtElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "extension field mismatch");
        ExtElem::from_poly(&self.field, &self.to_poly().mul(&other.to_poly()))
    }

    fn neg(&self) -> Self {
        ExtElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            return None;
        }
        let (g, s, _) = self.to_poly().ext_gcd(self.field.minpoly());
        debug_assert!(g.degree() == Some(0), "minimal polynomial not irreducible");
        Some(ExtElem::from_poly(&self.field, &s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn field(c: &[i64]) -> Arc<ExtField> {
        ExtField::new(QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn gaussian_square() {
        let k = field(&[1, 0, 1]);
        let a = ExtElem::generator(&k);
        assert_eq!(Field::mul(&a, &a), ExtElem::from_rat(&k, Rat::from(-1)));
    }

    #[test]
    fn inverse_of_sqrt_two() {
        let k = field(&[-2, 0, 1]);
        let a = ExtElem::generator(&k);
        let inv = ExtElem::arith(&a, &a, ExtOp::Inv).unwrap();
        assert_eq!(inv, ExtElem::from_poly(&k, &QPoly::new(vec![Rat::zero(), rat(1, 2)])));
    }

    #[test]
    fn cube_root_product() {
        let k = field(&[-2, 0, 0, 1]);
        let a = ExtElem::generator(&k);
        let one = a.one_like();
        let p = ExtElem::arith(&Field::add(&a, &one), &Field::sub(&a, &one), ExtOp::Mul).unwrap();
        assert_eq!(p.to_poly(), QPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn errors() {
        let k1 = field(&[1, 0, 1]);
        let k2 = field(&[-2, 0, 1]);
        let a = ExtElem::generator(&k1);
        let b = ExtElem::generator(&k2);
        assert_eq!(ExtElem::arith(&a, &b, ExtOp::Add).unwrap_err(), AlgebraError::FieldMismatch);
        let z = a.zero_like();
        assert_eq!(ExtElem::arith(&z, &z, ExtOp::Inv).unwrap_err(), AlgebraError::DivisionByZero);
        assert!(ExtField::new_checked(QPoly::from_ints(&[-1, 0, 1])).is_err());
    }

    #[test]
    fn degree_one_field_to_rat() {
        let k = field(&[-3, 1]);
        let a = ExtElem::generator(&k);
        assert_eq!(a.to_rat(), Some(Rat::from(3)));
    }
}
