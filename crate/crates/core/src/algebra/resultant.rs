use super::{AlgebraError, Poly, QPoly, Rat};

/// Sylvester matrix of `f` and `g` with respect to variable `idx`: the first
/// `deg g` rows carry the coefficients of `f`, the remaining `deg f` rows
/// those of `g`, each from the leading coefficient down.
fn sylvester(f: &Poly, g: &Poly, idx: usize) -> Vec<Vec<Poly>> {
    let fc = f.to_univariate(idx);
    let gc = g.to_univariate(idx);
    let m = fc.len() - 1;
    let n = gc.len() - 1;
    let size = m + n;
    let zero = Poly::zero_in(f.vars());
    let mut rows = Vec::with_capacity(size);
    for (count, coeffs, deg) in [(n, &fc, m), (m, &gc, n)] {
        for r in 0..count {
            let mut row = vec![zero.clone(); size];
            for k in 0..=deg {
                row[r + k] = coeffs[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant over the polynomial ring by Bareiss elimination with exact
/// division.
fn det_poly(mut a: Vec<Vec<Poly>>, vars: &[String]) -> Result<Poly, AlgebraError> {
    let n = a.len();
    if n == 0 {
        return Ok(Poly::constant_in(vars, Rat::one()));
    }
    let mut prev = Poly::constant_in(vars, Rat::one());
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Ok(Poly::zero_in(vars));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

/// `Res_var(f, g)` as a polynomial in the remaining variables. The sign
/// convention is the Sylvester determinant with the rows of `f` first, so
/// `Res_x(x - a, x - b) = a - b`.
pub fn poly_resultant(f: &Poly, g: &Poly, var: &str) -> Result<Poly, AlgebraError> {
    f.check_compatible(g)?;
    let idx = f
        .var_index(var)
        .ok_or_else(|| AlgebraError::Input(format!("variable {var:?} not among {:?}", f.vars())))?;
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::Input("resultant of a zero polynomial".into()));
    }
    let m = f.degree_in(idx).unwrap();
    let n = g.degree_in(idx).unwrap();
    if m == 0 && n == 0 {
        return Err(AlgebraError::Input(format!("neither polynomial involves {var:?}")));
    }
    let res = det_poly(sylvester(f, g, idx), f.vars())?;
    res.drop_var(idx)
}

/// Resultant of two univariate rational polynomials.
pub fn qpoly_resultant(f: &QPoly, g: &QPoly) -> Result<Rat, AlgebraError> {
    let vars = vec!["t".to_string()];
    let r = poly_resultant(&Poly::from_qpoly(&vars, 0, f), &Poly::from_qpoly(&vars, 0, g), "t")?;
    Ok(r.constant_value().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_poly;

    #[test]
    fn linear_convention() {
        let v = ["x", "a", "b"];
        let f = parse_poly("x - a", &v).unwrap();
        let g = parse_poly("x - b", &v).unwrap();
        let r = poly_resultant(&f, &g, "x").unwrap();
        assert_eq!(r, parse_poly("a - b", &["a", "b"]).unwrap());
    }

    #[test]
    fn substitution_case() {
        let v = ["x", "t"];
        let f = parse_poly("x^2 - t", &v).unwrap();
        let g = parse_poly("x - 1", &v).unwrap();
        assert_eq!(poly_resultant(&f, &g, "x").unwrap(), parse_poly("1 - t", &["t"]).unwrap());
    }

    #[test]
    fn four_by_four_against_expansion() {
        // Sylvester matrix of x^2 + t x + 1 and x^2 - t:
        // [1 t 1 0; 0 1 t 1; 1 0 -t 0; 0 1 0 -t], expanded by hand to -t^3 + t^2 + 2t + 1.
        let v = ["x", "t"];
        let f = parse_poly("x^2 + t*x + 1", &v).unwrap();
        let g = parse_poly("x^2 - t", &v).unwrap();
        let r = poly_resultant(&f, &g, "x").unwrap();
        assert_eq!(r, parse_poly("-t^3 + t^2 + 2*t + 1", &["t"]).unwrap());
    }

    #[test]
    fn errors() {
        let v = ["x", "t"];
        let f = parse_poly("x - 1", &v).unwrap();
        assert!(poly_resultant(&f, &f, "y").is_err());
        let c = parse_poly("t", &v).unwrap();
        assert!(poly_resultant(&c, &c, "x").is_err());
    }
}
