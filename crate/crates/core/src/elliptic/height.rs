use rayon::prelude::*;

use super::{classify_fibers, EllipticError, FiberReport, Kodaira, Section, WeierstrassModel};
use crate::algebra::{factor_univariate, Order, Place, QPoly, Rat, RatFunc};

/// Model, section and place moved into a chart where the place is finite.
fn localize(model: &WeierstrassModel, p: &Section, place: &Place) -> (WeierstrassModel, Section, Place) {
    match place {
        Place::Finite(_) => (model.clone(), p.clone(), place.clone()),
        Place::Infinity => (
            model.chart_at_infinity(),
            p.chart_at_infinity(model.chi),
            Place::Finite(QPoly::x()),
        ),
    }
}

fn positive(o: Order) -> bool {
    match o {
        Order::Infinite => true,
        Order::Finite(n) => n > 0,
    }
}

fn passes_singular_point(model: &WeierstrassModel, x: &RatFunc, y: &RatFunc, place: &Place) -> bool {
    x.order_at(place) >= Order::Finite(0)
        && positive(y.order_at(place))
        && positive(model.rhs_dx(x).order_at(place))
}

/// Component index of `p` on the fiber described by `report`. For `I_n`
/// with `n >= 3` and for `IV` the index is determined up to the fiber
/// symmetry `i <-> n - i`; the representative `<= n/2` is returned.
pub fn component_at(
    model: &WeierstrassModel,
    p: &Section,
    report: &FiberReport,
) -> Result<usize, EllipticError> {
    let (m, s, place) = localize(model, p, &report.place);
    let Section::Point { x, y } = &s else {
        return Ok(0);
    };
    if !report.kodaira.is_reducible() || !passes_singular_point(&m, x, y, &place) {
        return Ok(0);
    }
    match report.kodaira {
        Kodaira::I(2) | Kodaira::III | Kodaira::IV => Ok(1),
        Kodaira::I(n) => {
            let v = match y.order_at(&place) {
                Order::Infinite => i64::MAX,
                Order::Finite(v) => v,
            };
            Ok(v.min(n as i64 / 2) as usize)
        }
        _ => Err(EllipticError::ContributionUnavailable(
            report.kodaira.to_string(),
            report.place.to_string(),
        )),
    }
}

/// Local contribution for components `i`, `j` of a fiber of the given type.
pub fn contribution(kodaira: &Kodaira, i: usize, j: usize) -> Result<Rat, EllipticError> {
    let m = kodaira.components();
    if i >= m.max(1) || j >= m.max(1) {
        return Err(EllipticError::Input(format!(
            "component index out of range for {kodaira}"
        )));
    }
    if i == 0 || j == 0 {
        return Ok(Rat::zero());
    }
    match kodaira {
        Kodaira::I(n) => {
            let (lo, hi) = (i.min(j) as i64, i.max(j) as i64);
            Ok(Rat::new(lo * (*n as i64 - hi), *n as i64))
        }
        Kodaira::III => Ok(Rat::new(1, 2)),
        Kodaira::IV => Ok(if i == j { Rat::new(2, 3) } else { Rat::new(1, 3) }),
        _ => Err(EllipticError::ContributionUnavailable(kodaira.to_string(), String::new())),
    }
}

fn pair_contribution(
    model: &WeierstrassModel,
    p: &Section,
    q: &Section,
    report: &FiberReport,
) -> Result<Rat, EllipticError> {
    let a = component_at(model, p, report)?;
    let b = component_at(model, q, report)?;
    if a == 0 || b == 0 {
        return Ok(Rat::zero());
    }
    match report.kodaira {
        Kodaira::I(n) if n >= 3 => {
            let n = n as usize;
            let c = component_at(model, &model.add(p, &q.neg())?, report)?;
            let fold = |k: usize| k.min(n - k);
            let j = [b, n - b]
                .into_iter()
                .find(|&j| fold((a + n - j) % n) == c)
                .ok_or_else(|| EllipticError::Input("inconsistent component data".into()))?;
            contribution(&report.kodaira, a, j)
        }
        Kodaira::IV => {
            let c = component_at(model, &model.add(p, &q.neg())?, report)?;
            contribution(&report.kodaira, 1, if c == 0 { 1 } else { 2 })
        }
        _ => contribution(&report.kodaira, a, b),
    }
}

fn half_pole(order: i64, place: &Place) -> Result<i64, EllipticError> {
    if order >= 0 {
        return Ok(0);
    }
    if order % 2 != 0 {
        return Err(EllipticError::OddPole(place.to_string()));
    }
    Ok(-order / 2)
}

/// Intersection number `(P . O)`.
pub fn intersect_with_zero(model: &WeierstrassModel, p: &Section) -> Result<i64, EllipticError> {
    let Section::Point { x, .. } = p else {
        return Err(EllipticError::Input("(O . O) is not a section pairing".into()));
    };
    let mut total = 0;
    if x.den().degree().unwrap_or(0) > 0 {
        for (pi, _) in factor_univariate(x.den())?.factors {
            let place = Place::Finite(pi);
            total += half_pole(x.ord_at(&place)?, &place)? * place.degree() as i64;
        }
    }
    let xt = x.invert_variable(2 * model.chi as i64);
    if !xt.is_zero() {
        total += half_pole(xt.ord_at(&Place::Finite(QPoly::x()))?, &Place::Infinity)?;
    }
    Ok(total)
}

/// Intersection number `(P . Q)` of distinct sections, computed as
/// `((P - Q) . O)`: translation by `-Q` is an automorphism of the surface.
pub fn intersect_sections(
    model: &WeierstrassModel,
    p: &Section,
    q: &Section,
) -> Result<i64, EllipticError> {
    if p == q {
        return Err(EllipticError::SelfIntersection);
    }
    match (p, q) {
        (Section::Zero, s) | (s, Section::Zero) => intersect_with_zero(model, s),
        _ => intersect_with_zero(model, &model.add(p, &q.neg())?),
    }
}

/// Height pairing using precomputed fiber reports.
pub fn height_with(
    model: &WeierstrassModel,
    fibers: &[FiberReport],
    p: &Section,
    q: &Section,
) -> Result<Rat, EllipticError> {
    if p.is_zero() || q.is_zero() {
        return Ok(Rat::zero());
    }
    let chi = model.chi as i64;
    let mut contr = Rat::zero();
    for f in fibers.iter().filter(|f| f.kodaira.is_reducible()) {
        let c = pair_contribution(model, p, q, f)?;
        contr += &(c * Rat::from(f.place.degree()));
    }
    let po = intersect_with_zero(model, p)?;
    let base = if p == q {
        2 * chi + 2 * po
    } else {
        let qo = intersect_with_zero(model, q)?;
        chi + po + qo - intersect_sections(model, p, q)?
    };
    Ok(Rat::from(base) - contr)
}

/// Height pairing `<P, Q>`.
pub fn height(model: &WeierstrassModel, p: &Section, q: &Section) -> Result<Rat, EllipticError> {
    height_with(model, &classify_fibers(model)?, p, q)
}

/// Whether `p` meets the identity component of every reducible fiber.
pub fn is_narrow(model: &WeierstrassModel, p: &Section) -> Result<bool, EllipticError> {
    if p.is_zero() {
        return Ok(true);
    }
    for f in classify_fibers(model)?.iter().filter(|f| f.kodaira.is_reducible()) {
        if component_at(model, p, f)? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Gram matrix of the height pairing; entries are computed in parallel.
pub fn gram_matrix(model: &WeierstrassModel, basis: &[Section]) -> Result<Vec<Vec<Rat>>, EllipticError> {
    let fibers = classify_fibers(model)?;
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let values: Vec<Rat> = pairs
        .par_iter()
        .map(|&(i, j)| height_with(model, &fibers, &basis[i], &basis[j]))
        .collect::<Result<_, _>>()?;
    let mut g = vec![vec![Rat::zero(); n]; n];
    for ((i, j), v) in pairs.into_iter().zip(values) {
        g[i][j] = v.clone();
        g[j][i] = v;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rat;

    #[test]
    fn contribution_table() {
        assert_eq!(contribution(&Kodaira::I(2), 1, 1).unwrap(), Rat::new(1, 2));
        assert_eq!(contribution(&Kodaira::I(4), 1, 3).unwrap(), Rat::new(1, 4));
        assert_eq!(contribution(&Kodaira::I(5), 0, 3).unwrap(), Rat::zero());
        assert_eq!(contribution(&Kodaira::III, 1, 1).unwrap(), Rat::new(1, 2));
        assert_eq!(contribution(&Kodaira::IV, 1, 2).unwrap(), Rat::new(1, 3));
        assert!(contribution(&Kodaira::I0Star, 1, 1).is_err());
        assert!(contribution(&Kodaira::I(2), 2, 1).is_err());
    }

    #[test]
    fn pole_of_order_two() {
        // With s = t - 1: x = 1/s^2, y = (1 + s^2)/s^3 lies on
        // y^2 = x^3 + 2x^2 + (1 + s^2)x - 1.
        let s = QPoly::from_ints(&[-1, 1]);
        let a4 = QPoly::from_ints(&[1]).add(&s.mul(&s));
        let m = WeierstrassModel::new(QPoly::from_ints(&[2]), a4, QPoly::from_ints(&[-1]), 1).unwrap();
        let x = RatFunc::new(QPoly::from_ints(&[1]), s.pow(2)).unwrap();
        let y = RatFunc::new(QPoly::from_ints(&[1]).add(&s.mul(&s)), s.pow(3)).unwrap();
        let p = Section::new(x, y);
        assert!(m.contains(&p));
        assert_eq!(intersect_with_zero(&m, &p).unwrap(), 1);
    }
}
