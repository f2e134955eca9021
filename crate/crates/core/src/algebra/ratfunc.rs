use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{factor_univariate, AlgebraError, ExtElem, ExtField, Field, Poly, QPoly, Rat};

/// A point of the projective line over Q: a monic irreducible polynomial in
/// `t`, or infinity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    Finite(QPoly),
    Infinity,
}

impl Place {
    /// Finite place; certifies monicity and irreducibility.
    pub fn finite(pi: QPoly) -> Result<Self, AlgebraError> {
        let fac = factor_univariate(&pi)?;
        if !pi.is_monic() || fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(AlgebraError::Input(format!("{pi} is not monic irreducible")));
        }
        Ok(Place::Finite(pi))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    /// Residue field `Q[t]/(pi)`; `Q` at infinity.
    pub fn residue_field(&self) -> Arc<ExtField> {
        match self {
            Place::Finite(p) => ExtField::new(p.clone()).unwrap(),
            Place::Infinity => ExtField::rationals(),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => f.write_str(&p.fmt_var("t")),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl Serialize for Place {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Order of vanishing; the zero function has infinite order at every place.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Order {
    Finite(i64),
    Infinite,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::Infinite => None,
        }
    }
}

fn ord_poly(f: &QPoly, place: &Place) -> i64 {
    match place {
        Place::Infinity => -(f.degree().unwrap() as i64),
        Place::Finite(pi) => {
            let mut n = 0;
            let mut g = f.clone();
            loop {
                let (q, r) = g.div_rem(pi);
                if !r.is_zero() {
                    return n;
                }
                g = q;
                n += 1;
            }
        }
    }
}

/// Element of `Q(t)` in lowest terms with monic denominator.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g).unwrap();
        let den = den.div_exact(&g).unwrap();
        let lc = den.lc().unwrap().clone();
        let inv = lc.recip()?;
        Ok(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: QPoly) -> Self {
        RatFunc {
            num: p,
            den: QPoly::constant(Rat::one()),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    /// The function `t`.
    pub fn t() -> Self {
        Self::from_poly(QPoly::x())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        Self::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
        .unwrap()
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).unwrap()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).unwrap()
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, AlgebraError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        RatFunc {
            num: if e == 0 { QPoly::constant(Rat::one()) } else { self.num.pow(e) },
            den: if e == 0 { QPoly::constant(Rat::one()) } else { self.den.pow(e) },
        }
    }

    /// Order of vanishing at a place (negative for poles). At infinity this
    /// is `deg(den) - deg(num)`.
    pub fn ord_at(&self, place: &Place) -> Result<i64, AlgebraError> {
        match self.order_at(place) {
            Order::Finite(n) => Ok(n),
            Order::Infinite => Err(AlgebraError::Input(
                "order of the zero function is infinite".into(),
            )),
        }
    }

    pub fn order_at(&self, place: &Place) -> Order {
        if self.is_zero() {
            return Order::Infinite;
        }
        Order::Finite(ord_poly(&self.num, place) - ord_poly(&self.den, place))
    }

    pub fn eval(&self, a: &Rat) -> Option<Rat> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(a) / &d)
    }

    /// Image in the residue field `Q[t]/(pi)`; `None` at a pole.
    pub fn reduce_mod(&self, field: &Arc<ExtField>) -> Option<ExtElem> {
        let d = ExtElem::from_poly(field, &self.den);
        let inv = d.inv()?;
        Some(ExtElem::from_poly(field, &self.num).mul(&inv))
    }

    /// `u^w * f(1/u)`, as a function of `u`.
    pub fn invert_variable(&self, w: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let rev = |p: &QPoly| {
            let mut c = p.coeffs().to_vec();
            c.reverse();
            QPoly::new(c)
        };
        let shift = w + self.den.degree().unwrap() as i64 - self.num.degree().unwrap() as i64;
        let (mut num, mut den) = (rev(&self.num), rev(&self.den));
        if shift >= 0 {
            num = num.mul(&QPoly::monomial(Rat::one(), shift as usize));
        } else {
            den = den.mul(&QPoly::monomial(Rat::one(), (-shift) as usize));
        }
        Self::new(num, den).unwrap()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
        .unwrap()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            f.write_str(&self.num.scale(&self.den.lc().unwrap().recip().unwrap()).fmt_var("t"))
        } else {
            write!(f, "({})/({})", self.num.fmt_var("t"), self.den.fmt_var("t"))
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn t_vars() -> Vec<String> {
    vec!["t".to_string()]
}

#[derive(Serialize, Deserialize)]
struct RatFuncRepr {
    num: Poly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    den: Option<Poly>,
}

impl Serialize for RatFunc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let vars = t_vars();
        RatFuncRepr {
            num: Poly::from_qpoly(&vars, 0, &self.num),
            den: (!self.is_poly()).then(|| Poly::from_qpoly(&vars, 0, &self.den)),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RatFunc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = RatFuncRepr::deserialize(deserializer)?;
        let uni = |p: &Poly| -> Result<QPoly, D::Error> {
            match p.nvars() {
                0 => Ok(QPoly::constant(p.constant_value().unwrap())),
                1 => p.to_qpoly(0).map_err(D::Error::custom),
                _ => Err(D::Error::custom("rational function must be univariate")),
            }
        };
        let num = uni(&repr.num)?;
        let den = match &repr.den {
            Some(d) => uni(d)?,
            None => QPoly::constant(Rat::one()),
        };
        RatFunc::new(num, den).map_err(D::Error::custom)
    }
}
