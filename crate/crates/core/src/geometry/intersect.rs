use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{GeometryError, PointOrbit};
use crate::algebra::{
    factor_univariate, linalg, poly_resultant, ExtElem, ExtField, Field, Poly, QPoly, Rat, UPoly,
};

const SHEAR_ATTEMPTS: u64 = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    pub point: PointOrbit,
    pub multiplicity: usize,
}

/// Intersection points of two plane curves, grouped into Galois orbits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionCycle {
    pub points: Vec<IntersectionPoint>,
}

impl IntersectionCycle {
    /// Total intersection number, counting every conjugate.
    pub fn total(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity * p.point.degree()).sum()
    }

    /// Number of geometric points.
    pub fn num_points(&self) -> usize {
        self.points.iter().map(|p| p.point.degree()).sum()
    }
}

fn yvars() -> Vec<String> {
    ["Y0", "Y1", "Y2"].map(String::from).to_vec()
}

fn random_matrix(rng: &mut ChaCha8Rng) -> [[Rat; 3]; 3] {
    loop {
        let m: [[Rat; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| Rat::from(rng.gen_range(-4i64..=4))));
        let rows: Vec<Vec<Rat>> = m.iter().map(|r| r.to_vec()).collect();
        if !linalg::det(&rows).is_zero() {
            return m;
        }
    }
}

fn substitute(f: &Poly, m: &[[Rat; 3]; 3]) -> Poly {
    let v = yvars();
    let subs: Vec<Poly> = (0..3)
        .map(|i| {
            (0..3).fold(Poly::zero_in(&v), |acc, j| {
                acc.add(&Poly::var_in(&v, &v[j]).unwrap().scale(&m[i][j]))
            })
        })
        .collect();
    f.compose(&subs)
}

/// `f(a, 1, Y2)` as a polynomial in `Y2` over `K = Q(a)`.
fn on_line(f: &Poly, k: &std::sync::Arc<ExtField>) -> UPoly<ExtElem> {
    let a = ExtElem::generator(k);
    let mut coeffs = vec![ExtElem::from_rat(k, Rat::zero()); f.degree_in(2).unwrap_or(0) as usize + 1];
    for (m, c) in f.terms() {
        let e = &m.0;
        let term = a.pow(e[0]).mul(&ExtElem::from_rat(k, c.clone()));
        coeffs[e[2] as usize] = coeffs[e[2] as usize].add(&term);
    }
    UPoly::new(coeffs)
}

fn check_plane_curve(f: &Poly) -> Result<(), GeometryError> {
    if f.nvars() != 3 {
        return Err(GeometryError::Input("curves must be given in three homogeneous variables".into()));
    }
    if f.is_zero() || f.is_constant() {
        return Err(GeometryError::Input("curve equation is constant".into()));
    }
    if !f.is_homogeneous() {
        return Err(GeometryError::NotHomogeneous);
    }
    Ok(())
}

/// One attempt with the coordinate change `X = M Y`; `None` when the
/// projection from `[0:0:1]` is not generic for this pair.
fn attempt(f: &Poly, g: &Poly, m: &[[Rat; 3]; 3]) -> Result<Option<IntersectionCycle>, GeometryError> {
    let fy = substitute(f, m);
    let gy = substitute(g, m);
    let (df, dg) = (f.total_degree().unwrap(), g.total_degree().unwrap());
    // The projection centre must lie off both curves.
    if fy.coeff(&[0, 0, df]).is_zero() || gy.coeff(&[0, 0, dg]).is_zero() {
        return Ok(None);
    }
    let res = poly_resultant(&fy, &gy, "Y2")?;
    if res.is_zero() {
        return Err(GeometryError::CommonComponent);
    }
    // res is a form in (Y0, Y1) of degree df*dg; the line Y1 = 0 must not
    // carry an intersection point.
    let total = (df * dg) as usize;
    let r = res.substitute_value(1, &Rat::one()).to_qpoly(0)?;
    if r.degree() != Some(total) {
        return Ok(None);
    }
    let mut points = Vec::new();
    for (pi, mult) in factor_univariate(&r)?.factors {
        let k = ExtField::new(pi.clone())?;
        let h = on_line(&fy, &k).gcd(&on_line(&gy, &k));
        let h = h.squarefree_part();
        if h.degree() != Some(1) {
            return Ok(None);
        }
        let c = h.coeffs()[0].neg().div(&h.coeffs()[1]).unwrap();
        let y = [ExtElem::generator(&k), ExtElem::from_rat(&k, Rat::one()), c];
        let coords: [QPoly; 3] = std::array::from_fn(|i| {
            (0..3)
                .fold(ExtElem::from_rat(&k, Rat::zero()), |acc, j| {
                    acc.add(&y[j].mul(&ExtElem::from_rat(&k, m[i][j].clone())))
                })
                .to_poly()
        });
        points.push(IntersectionPoint { point: normalize(PointOrbit::new(pi, coords)?), multiplicity: mult });
    }
    Ok(Some(IntersectionCycle { points }))
}

/// Scales the coordinates so that the last nonzero one equals 1.
pub(crate) fn normalize(p: PointOrbit) -> PointOrbit {
    let c = p.coords_in_field();
    let Some(piv) = c.iter().rev().find(|e| !e.is_zero()) else {
        return p;
    };
    let inv = piv.inv().unwrap();
    let coords = c.map(|e| e.mul(&inv).to_poly());
    let q = PointOrbit::new(p.minpoly().clone(), coords).unwrap();
    match q.as_rational() {
        Some([x, y, z]) => PointOrbit::rational(x, y, z).unwrap(),
        None => q,
    }
}

/// Intersection cycle of two projective plane curves given by forms in the
/// same three variables. A seeded random change of coordinates makes the
/// projection from `[0:0:1]` generic; multiplicities are read off the
/// factorization of the eliminating resultant.
pub fn intersection_cycle(f: &Poly, g: &Poly, seed: u64) -> Result<IntersectionCycle, GeometryError> {
    check_plane_curve(f)?;
    check_plane_curve(g)?;
    f.check_compatible(g)?;
    for i in 0..SHEAR_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let m = random_matrix(&mut rng);
        if let Some(c) = attempt(f, g, &m)? {
            return Ok(c);
        }
    }
    Err(GeometryError::ProjectionFailed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn conic_and_line() {
        let c = intersection_cycle(&p("x*z - y^2"), &p("y"), 1).unwrap();
        assert_eq!(c.total(), 2);
        let mut pts: Vec<_> = c.points.iter().map(|q| q.point.as_rational().unwrap()).collect();
        pts.sort();
        let r = |a: i64, b: i64, c: i64| [Rat::from(a), Rat::from(b), Rat::from(c)];
        assert!(pts.contains(&r(1, 0, 0)) && pts.contains(&r(0, 0, 1)));
        assert!(c.points.iter().all(|q| q.multiplicity == 1));
    }

    #[test]
    fn tangency() {
        let c = intersection_cycle(&p("y*z - x^2"), &p("y"), 2).unwrap();
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.points[0].multiplicity, 2);
    }

    #[test]
    fn irrational_points() {
        let c = intersection_cycle(&p("x^2 + y^2 - 3*z^2"), &p("x - y"), 3).unwrap();
        assert_eq!(c.points.len(), 1);
        assert_eq!(c.points[0].point.degree(), 2);
        assert!(c.points[0].point.lies_on(&p("x^2 + y^2 - 3*z^2")));
    }

    #[test]
    fn common_component() {
        assert!(matches!(
            intersection_cycle(&p("x*y"), &p("x*z"), 0),
            Err(GeometryError::CommonComponent)
        ));
    }
}
