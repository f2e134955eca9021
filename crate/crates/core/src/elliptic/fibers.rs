use std::fmt;

use serde::Serialize;

use super::{EllipticError, WeierstrassModel};
use crate::algebra::{factor_univariate, Place, QPoly, RatFunc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kodaira {
    I(u32),
    II,
    III,
    IV,
    I0Star,
    IStar(u32),
    Unsupported,
}

impl Kodaira {
    /// Number of irreducible components of the fiber.
    pub fn components(&self) -> usize {
        match self {
            Kodaira::I(n) => *n as usize,
            Kodaira::II => 1,
            Kodaira::III => 2,
            Kodaira::IV => 3,
            Kodaira::I0Star => 5,
            Kodaira::IStar(n) => *n as usize + 5,
            Kodaira::Unsupported => 0,
        }
    }

    pub fn is_reducible(&self) -> bool {
        self.components() != 1
    }
}

impl fmt::Display for Kodaira {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kodaira::I(n) => write!(f, "I{n}"),
            Kodaira::II => f.write_str("II"),
            Kodaira::III => f.write_str("III"),
            Kodaira::IV => f.write_str("IV"),
            Kodaira::I0Star => f.write_str("I0*"),
            Kodaira::IStar(n) => write!(f, "I{n}*"),
            Kodaira::Unsupported => f.write_str("unsupported"),
        }
    }
}

impl Serialize for Kodaira {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Singular fiber over a place. Orders of `c4`, `c6` are `None` when the
/// invariant vanishes identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub place: Place,
    pub kodaira: Kodaira,
    pub components: usize,
    pub ord_c4: Option<i64>,
    pub ord_c6: Option<i64>,
    pub ord_delta: i64,
}

fn ord(p: &QPoly, place: &Place) -> Option<i64> {
    RatFunc::from_poly(p.clone()).order_at(place).finite()
}

/// Lookup on `(v(c4), v(c6), v(Delta))`.
fn lookup(c4: Option<i64>, c6: Option<i64>, d: i64, place: &Place) -> Result<Kodaira, EllipticError> {
    let ge = |v: Option<i64>, k: i64| v.map_or(true, |v| v >= k);
    let eq = |v: Option<i64>, k: i64| v == Some(k);
    if ge(c4, 4) && ge(c6, 6) && d >= 12 {
        return Err(EllipticError::NotMinimal(place.to_string()));
    }
    Ok(if eq(c4, 0) {
        Kodaira::I(d as u32)
    } else if d == 2 && ge(c4, 1) {
        Kodaira::II
    } else if d == 3 && eq(c4, 1) {
        Kodaira::III
    } else if d == 4 && eq(c6, 2) {
        Kodaira::IV
    } else if ge(c4, 2) && ge(c6, 3) && d == 6 {
        Kodaira::I0Star
    } else if eq(c4, 2) && eq(c6, 3) && d > 6 {
        Kodaira::IStar((d - 6) as u32)
    } else {
        Kodaira::Unsupported
    })
}

fn report(c4: &QPoly, c6: &QPoly, delta: &QPoly, place: Place, at: &Place) -> Result<FiberReport, EllipticError> {
    let (o4, o6) = (ord(c4, at), ord(c6, at));
    let od = ord(delta, at).unwrap();
    let kodaira = lookup(o4, o6, od, &place)?;
    Ok(FiberReport {
        components: kodaira.components(),
        place,
        kodaira,
        ord_c4: o4,
        ord_c6: o6,
        ord_delta: od,
    })
}

/// One report per place of bad reduction, finite places first (in factor
/// order), then infinity when the chart discriminant vanishes at `u = 0`.
pub fn classify_fibers(model: &WeierstrassModel) -> Result<Vec<FiberReport>, EllipticError> {
    let (c4, c6, delta) = model.invariants()?;
    let mut out = Vec::new();
    for (pi, _) in factor_univariate(&delta)?.factors {
        let place = Place::Finite(pi);
        out.push(report(&c4, &c6, &delta, place.clone(), &place)?);
    }
    let chart = model.chart_at_infinity();
    let (c4, c6, delta) = chart.invariants()?;
    let u = Place::Finite(QPoly::x());
    if ord(&delta, &u).unwrap() > 0 {
        out.push(report(&c4, &c6, &delta, Place::Infinity, &u)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_at_origin() {
        let m = WeierstrassModel::new(QPoly::zero(), QPoly::zero(), QPoly::from_ints(&[0, 1]), 1).unwrap();
        let r = classify_fibers(&m).unwrap();
        assert_eq!(r[0].kodaira, Kodaira::II);
        assert_eq!(r[0].ord_c4, None);
        assert_eq!(r[0].ord_c6, Some(1));
        let total: i64 = r.iter().map(|f| f.ord_delta).sum();
        assert_eq!(total, 12);
        // y^2 = x^3 + t at infinity: a6 -> u^5, type II* (unsupported in the table)
        assert_eq!(r[1].place, Place::Infinity);
        assert_eq!(r[1].ord_delta, 10);
    }

    #[test]
    fn table_rows() {
        let p = Place::Infinity;
        assert_eq!(lookup(Some(0), Some(0), 3, &p).unwrap(), Kodaira::I(3));
        assert_eq!(lookup(Some(1), Some(2), 3, &p).unwrap(), Kodaira::III);
        assert_eq!(lookup(Some(2), Some(2), 4, &p).unwrap(), Kodaira::IV);
        assert_eq!(lookup(Some(2), Some(3), 6, &p).unwrap(), Kodaira::I0Star);
        assert_eq!(lookup(Some(2), Some(3), 8, &p).unwrap(), Kodaira::IStar(2));
        assert_eq!(lookup(Some(3), Some(5), 9, &p).unwrap(), Kodaira::Unsupported);
        assert!(lookup(Some(4), None, 12, &p).is_err());
    }
}
