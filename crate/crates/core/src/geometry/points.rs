use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{AlgebraError, ExtElem, ExtField, Field, Poly, QPoly, Rat};

/// A Galois orbit of points of the projective plane: the conjugates of
/// `[X(a) : Y(a) : Z(a)]` where `a` runs over the roots of `minpoly`.
/// Rational points use `minpoly = a`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointOrbit {
    minpoly: QPoly,
    coords: [QPoly; 3],
}

impl PointOrbit {
    /// Builds an orbit; coordinates are reduced modulo `minpoly`.
    pub fn new(minpoly: QPoly, coords: [QPoly; 3]) -> Result<Self, AlgebraError> {
        let field = ExtField::new(minpoly.clone())?;
        let coords = coords.map(|c| ExtElem::from_poly(&field, &c).to_poly());
        if coords.iter().all(QPoly::is_zero) {
            return Err(AlgebraError::Input("all homogeneous coordinates vanish".into()));
        }
        Ok(PointOrbit { minpoly, coords })
    }

    pub fn rational(x: Rat, y: Rat, z: Rat) -> Result<Self, AlgebraError> {
        Self::new(QPoly::x(), [x, y, z].map(QPoly::constant))
    }

    /// Affine point `(x, y)` of the chart `Z = 1`.
    pub fn affine(x: Rat, y: Rat) -> Self {
        Self::rational(x, y, Rat::one()).unwrap()
    }

    pub fn minpoly(&self) -> &QPoly {
        &self.minpoly
    }

    pub fn coords(&self) -> &[QPoly; 3] {
        &self.coords
    }

    /// Number of geometric points in the orbit.
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn field(&self) -> Arc<ExtField> {
        ExtField::new(self.minpoly.clone()).unwrap()
    }

    pub fn coords_in_field(&self) -> [ExtElem; 3] {
        let k = self.field();
        self.coords.clone().map(|c| ExtElem::from_poly(&k, &c))
    }

    /// Value of a polynomial in the three homogeneous coordinates.
    pub fn eval(&self, f: &Poly) -> ExtElem {
        f.eval(&self.coords_in_field())
    }

    pub fn lies_on(&self, f: &Poly) -> bool {
        self.eval(f).is_zero()
    }

    /// Rational coordinates when the orbit is a single point.
    pub fn as_rational(&self) -> Option<[Rat; 3]> {
        if self.degree() != 1 {
            return None;
        }
        let k = self.field();
        let c = self.coords.clone().map(|c| ExtElem::from_poly(&k, &c).to_rat().unwrap());
        Some(c)
    }

    /// Applies a linear change of coordinates `X -> M X`.
    pub fn transform(&self, m: &[[Rat; 3]; 3]) -> Self {
        let coords: [QPoly; 3] = std::array::from_fn(|i| {
            (0..3).fold(QPoly::zero(), |acc, j| acc.add(&self.coords[j].scale(&m[i][j])))
        });
        PointOrbit::new(self.minpoly.clone(), coords).unwrap()
    }
}

impl fmt::Debug for PointOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_rational() {
            write!(f, "[{} : {} : {}]", c[0], c[1], c[2])
        } else {
            write!(
                f,
                "[{} : {} : {}] over {}",
                self.coords[0].fmt_var("a"),
                self.coords[1].fmt_var("a"),
                self.coords[2].fmt_var("a"),
                self.minpoly.fmt_var("a")
            )
        }
    }
}

fn a_vars() -> Vec<String> {
    vec!["a".to_string()]
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OrbitRepr {
    Rational(Vec<Rat>),
    Orbit { minpoly: Poly, coords: Vec<Poly> },
}

impl Serialize for PointOrbit {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_rational() {
            Some(c) => OrbitRepr::Rational(c.to_vec()).serialize(s),
            None => {
                let v = a_vars();
                OrbitRepr::Orbit {
                    minpoly: Poly::from_qpoly(&v, 0, &self.minpoly),
                    coords: self.coords.iter().map(|c| Poly::from_qpoly(&v, 0, c)).collect(),
                }
                .serialize(s)
            }
        }
    }
}

impl<'de> Deserialize<'de> for PointOrbit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        match OrbitRepr::deserialize(d)? {
            OrbitRepr::Rational(c) => match c.len() {
                2 => Ok(PointOrbit::affine(c[0].clone(), c[1].clone())),
                3 => PointOrbit::rational(c[0].clone(), c[1].clone(), c[2].clone()).map_err(D::Error::custom),
                n => Err(D::Error::custom(format!("a point needs 2 or 3 coordinates, got {n}"))),
            },
            OrbitRepr::Orbit { minpoly, coords } => {
                let uni = |p: &Poly| -> Result<QPoly, D::Error> {
                    match p.nvars() {
                        0 => Ok(QPoly::constant(p.constant_value().unwrap())),
                        1 => p.to_qpoly(0).map_err(D::Error::custom),
                        _ => Err(D::Error::custom("orbit data must be univariate")),
                    }
                };
                let m = uni(&minpoly)?;
                let mut cs: Vec<QPoly> = coords.iter().map(uni).collect::<Result<_, _>>()?;
                if cs.len() == 2 {
                    cs.push(QPoly::constant(Rat::one()));
                }
                let cs: [QPoly; 3] = cs
                    .try_into()
                    .map_err(|_| D::Error::custom("an orbit needs 2 or 3 coordinates"))?;
                let fac = crate::algebra::factor_univariate(&m).map_err(D::Error::custom)?;
                if !m.is_monic() || fac.factors.len() != 1 || fac.factors[0].1 != 1 {
                    return Err(D::Error::custom("orbit minimal polynomial must be monic irreducible"));
                }
                PointOrbit::new(m, cs).map_err(D::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn json_forms() {
        let p: PointOrbit = serde_json::from_str(r#"["1/2", "3"]"#).unwrap();
        assert_eq!(p.as_rational().unwrap()[2], Rat::one());
        let o: PointOrbit = serde_json::from_str(
            r#"{"minpoly":{"vars":["a"],"terms":[{"exp":[2],"coef":"1"},{"exp":[0],"coef":"-2"}]},
                "coords":[{"vars":["a"],"terms":[{"exp":[1],"coef":"1"}]},
                          {"vars":["a"],"terms":[{"exp":[0],"coef":"2"}]}]}"#,
        )
        .unwrap();
        assert_eq!(o.degree(), 2);
        // x^2 - 2 z^2 vanishes at [a : 2 : 1] with a^2 = 2
        let f = parse_poly("x^2 - 2*z^2", &["x", "y", "z"]).unwrap();
        assert!(o.lies_on(&f));
        let back: PointOrbit = serde_json::from_str(&serde_json::to_string(&o).unwrap()).unwrap();
        assert_eq!(back, o);
    }
}
