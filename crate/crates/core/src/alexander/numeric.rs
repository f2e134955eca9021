//! Rank of evaluation matrices from approximations of the points, with
//! complete-pivot elimination in binary fixed point at three precisions.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{affine_monomials, AlexanderError};
use crate::algebra::{QPoly, Rat};
use crate::geometry::PointOrbit;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumericRank {
    pub rank: usize,
    /// Ranks at `bits`, `2 bits` and `4 bits`.
    pub ranks: Vec<usize>,
    pub certified: bool,
}

/// Complex number `(re + i im) / 2^w`.
#[derive(Clone, Debug)]
struct Fx {
    re: BigInt,
    im: BigInt,
}

struct Ctx {
    w: u32,
}

impl Ctx {
    fn zero(&self) -> Fx {
        Fx { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn real(&self, r: &Rat) -> Fx {
        Fx { re: (r.numer() << self.w) / r.denom(), im: BigInt::zero() }
    }

    fn from_c64(&self, z: Complex64) -> Fx {
        let conv = |v: f64| {
            let r = BigRational::from_float(v).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()));
            (r.numer() << self.w) / r.denom()
        };
        Fx { re: conv(z.re), im: conv(z.im) }
    }

    fn to_c64(&self, a: &Fx) -> Complex64 {
        let conv = |v: &BigInt| Rat::from_big_rational(BigRational::new(v.clone(), BigInt::from(1) << self.w)).to_f64();
        Complex64::new(conv(&a.re), conv(&a.im))
    }

    fn add(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { re: &a.re + &b.re, im: &a.im + &b.im }
    }

    fn sub(&self, a: &Fx, b: &Fx) -> Fx {
        Fx { re: &a.re - &b.re, im: &a.im - &b.im }
    }

    fn mul(&self, a: &Fx, b: &Fx) -> Fx {
        Fx {
            re: (&a.re * &b.re - &a.im * &b.im) >> self.w,
            im: (&a.re * &b.im + &a.im * &b.re) >> self.w,
        }
    }

    /// Squared modulus scaled by `2^(2w)`.
    fn abs2(&self, a: &Fx) -> BigInt {
        &a.re * &a.re + &a.im * &a.im
    }

    fn div(&self, a: &Fx, b: &Fx) -> Option<Fx> {
        let n = self.abs2(b);
        if n.is_zero() {
            return None;
        }
        Some(Fx {
            re: ((&a.re * &b.re + &a.im * &b.im) << self.w) / &n,
            im: ((&a.im * &b.re - &a.re * &b.im) << self.w) / &n,
        })
    }

    fn horner(&self, p: &[Fx], z: &Fx) -> Fx {
        p.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, z), c))
    }

    fn poly(&self, p: &QPoly) -> Vec<Fx> {
        p.coeffs().iter().map(|c| self.real(c)).collect()
    }
}

/// Simultaneous root approximation in double precision.
fn aberth(p: &QPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p.coeffs().iter().map(Rat::to_f64).collect();
    let n = c.len() - 1;
    if n == 1 {
        return vec![Complex64::new(-c[0] / c[1], 0.0)];
    }
    let lead = c[n];
    let radius = (1..=n)
        .map(|i| (c[n - i] / lead).abs().powf(1.0 / i as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3)
        * 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    let eval = |x: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * x + v;
            v = v * x + a;
        }
        (v, d)
    };
    for _ in 0..2000 {
        let mut moved = false;
        for k in 0..n {
            let (v, d) = eval(z[k]);
            if v == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != k).map(|j| 1.0 / (z[k] - z[j])).sum();
            let step = ratio / (1.0 - ratio * s);
            if step.norm() > 1e-15 * z[k].norm().max(1.0) {
                moved = true;
            }
            z[k] -= step;
        }
        if !moved {
            break;
        }
    }
    z
}

/// Roots of an irreducible polynomial to about `w` bits.
fn roots(ctx: &Ctx, p: &QPoly) -> Vec<Fx> {
    let coeffs = ctx.poly(p);
    let deriv = ctx.poly(&p.derivative());
    let steps = 2 * (32 - ctx.w.leading_zeros()) + 8;
    aberth(p)
        .into_iter()
        .map(|z0| {
            let mut z = ctx.from_c64(z0);
            for _ in 0..steps {
                let v = ctx.horner(&coeffs, &z);
                let d = ctx.horner(&deriv, &z);
                match ctx.div(&v, &d) {
                    Some(step) => z = ctx.sub(&z, &step),
                    None => break,
                }
            }
            z
        })
        .collect()
}

/// Affine coordinates of every conjugate point.
fn approximate_points(ctx: &Ctx, points: &[PointOrbit], chart: &[[Rat; 3]; 3]) -> Result<Vec<[Fx; 2]>, AlexanderError> {
    let mut out = Vec::new();
    for p in points {
        let q = p.transform(chart);
        let coords: Vec<Vec<Fx>> = q.coords().iter().map(|c| ctx.poly(c)).collect();
        for a in roots(ctx, q.minpoly()) {
            let v: Vec<Fx> = coords.iter().map(|c| ctx.horner(c, &a)).collect();
            let x = ctx.div(&v[0], &v[2]).ok_or_else(|| AlexanderError::AtInfinity(format!("{p:?}")))?;
            let y = ctx.div(&v[1], &v[2]).ok_or_else(|| AlexanderError::AtInfinity(format!("{p:?}")))?;
            out.push([x, y]);
        }
    }
    Ok(out)
}

/// Rank by complete pivoting; entries below `2^(-w/2)` relative to the
/// largest entry count as zero.
fn rank_fx(ctx: &Ctx, mut a: Vec<Vec<Fx>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let largest = a.iter().flatten().map(|e| ctx.abs2(e)).max().unwrap_or_default();
    if largest.is_zero() {
        return 0;
    }
    // |e|^2 < largest * 2^(-w)
    let cutoff = &largest >> ctx.w;
    let mut rank = 0;
    for r in 0..rows.min(cols) {
        let mut best: Option<(usize, usize, BigInt)> = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            for (j, e) in row.iter().enumerate().skip(r) {
                let m = ctx.abs2(e);
                if best.as_ref().map_or(true, |b| m > b.2) {
                    best = Some((i, j, m));
                }
            }
        }
        let Some((pi, pj, m)) = best else { break };
        if m <= cutoff {
            break;
        }
        a.swap(r, pi);
        for row in a.iter_mut() {
            row.swap(r, pj);
        }
        let piv = a[r][r].clone();
        for i in r + 1..rows {
            let f = ctx.div(&a[i][r], &piv).unwrap();
            for j in r..cols {
                let t = ctx.mul(&f, &a[r][j]);
                a[i][j] = ctx.sub(&a[i][j], &t);
            }
        }
        rank += 1;
    }
    rank
}

fn rank_at(points: &[PointOrbit], chart: &[[Rat; 3]; 3], deg: u32, w: u32) -> Result<usize, AlexanderError> {
    let ctx = Ctx { w: w + 64 };
    let pts = approximate_points(&ctx, points, chart)?;
    if pts.is_empty() {
        return Ok(0);
    }
    // Move the points near the origin at unit scale; an affine change of
    // coordinates preserves the space of polynomials of degree <= deg.
    let approx: Vec<[Complex64; 2]> = pts.iter().map(|[x, y]| [ctx.to_c64(x), ctx.to_c64(y)]).collect();
    let n = approx.len() as f64;
    let cx = approx.iter().map(|p| p[0].re).sum::<f64>() / n;
    let cy = approx.iter().map(|p| p[1].re).sum::<f64>() / n;
    let scale = approx
        .iter()
        .map(|p| (p[0] - cx).norm().max((p[1] - cy).norm()))
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let (cx, cy, s) = (
        ctx.from_c64(Complex64::new(cx, 0.0)),
        ctx.from_c64(Complex64::new(cy, 0.0)),
        ctx.from_c64(Complex64::new(scale, 0.0)),
    );
    let mons = affine_monomials(deg);
    let mut cols: Vec<Vec<Fx>> = Vec::new();
    for [x, y] in &pts {
        let x = ctx.div(&ctx.sub(x, &cx), &s).unwrap();
        let y = ctx.div(&ctx.sub(y, &cy), &s).unwrap();
        let top = deg as usize;
        let mut xp = vec![ctx.real(&Rat::one())];
        let mut yp = vec![ctx.real(&Rat::one())];
        for i in 1..=top {
            xp.push(ctx.mul(&xp[i - 1], &x));
            yp.push(ctx.mul(&yp[i - 1], &y));
        }
        let col: Vec<Fx> = mons.iter().map(|&(a, b)| ctx.mul(&xp[a as usize], &yp[b as usize])).collect();
        // column scaling by the entry of largest modulus
        let big = col.iter().max_by_key(|e| ctx.abs2(e)).unwrap().clone();
        cols.push(col.iter().map(|e| ctx.div(e, &big).unwrap()).collect());
    }
    let rows: Vec<Vec<Fx>> = (0..mons.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let work = Ctx { w };
    let trimmed: Vec<Vec<Fx>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|e| Fx { re: e.re >> 64u32, im: e.im >> 64u32 }).collect())
        .collect();
    Ok(rank_fx(&work, trimmed))
}

/// Rank of the evaluation matrix of affine monomials of degree at most
/// `deg` at all conjugates of `points`, from approximations at `bits`,
/// `2 bits` and `4 bits`. Certified when the three ranks agree and match
/// `exact` when it is supplied.
pub fn rank_certified_numeric(
    points: &[PointOrbit],
    chart: &[[Rat; 3]; 3],
    deg: u32,
    bits: u32,
    exact: Option<usize>,
) -> Result<NumericRank, AlexanderError> {
    if bits < 16 {
        return Err(AlexanderError::Range(format!("precision of {bits} bits is too small")));
    }
    let ranks = [bits, 2 * bits, 4 * bits]
        .into_iter()
        .map(|w| rank_at(points, chart, deg, w))
        .collect::<Result<Vec<_>, _>>()?;
    let rank = *ranks.last().unwrap();
    let stable = ranks.iter().all(|&r| r == rank);
    let certified = stable && exact.map_or(true, |e| e == rank);
    Ok(NumericRank { rank, ranks, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::identity_chart;

    fn parabola() -> Vec<PointOrbit> {
        (1..=8).map(|i| PointOrbit::affine(Rat::from(i), Rat::from(i * i))).collect()
    }

    #[test]
    fn conic_points() {
        let r = rank_certified_numeric(&parabola(), &identity_chart(), 3, 200, Some(7)).unwrap();
        assert_eq!(r.rank, 7);
        assert!(r.certified);
    }

    #[test]
    fn perturbed_point() {
        let mut pts = parabola();
        pts[7] = PointOrbit::affine(Rat::from(8), Rat::from(64) + Rat::new(1, 1_000_000));
        let r = rank_certified_numeric(&pts, &identity_chart(), 3, 200, None).unwrap();
        assert_eq!(r.rank, 8);
    }

    #[test]
    fn conjugate_roots() {
        // x^2 + 1: the points (i, -1) and (-i, -1) lie on y = x^2
        let o = PointOrbit::new(
            QPoly::from_ints(&[1, 0, 1]),
            [QPoly::x(), QPoly::from_ints(&[-1]), QPoly::from_ints(&[1])],
        )
        .unwrap();
        let mut pts = parabola()[..6].to_vec();
        pts.push(o);
        let r = rank_certified_numeric(&pts, &identity_chart(), 3, 100, Some(7)).unwrap();
        assert_eq!(r.rank, 7);
        assert!(r.certified);
    }
}
