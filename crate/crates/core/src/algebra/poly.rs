use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AlgebraError, Field, QPoly, Rat};

/// Exponent vector ordered graded-lexicographically: total degree first,
/// then lexicographically with the first variable most significant.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with rational coefficients over an ordered
/// list of named variables. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rat>,
}

impl Poly {
    pub fn zero(vars: &[&str]) -> Self {
        Poly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn zero_in(vars: &[String]) -> Self {
        Poly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_in(vars: &[String], c: Rat) -> Self {
        let mut p = Self::zero_in(vars);
        p.add_term(Mono(vec![0; vars.len()]), c);
        p
    }

    pub fn constant(vars: &[&str], c: Rat) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::constant_in(&vars, c)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self, AlgebraError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::var_in(&vars, name)
    }

    pub fn var_in(vars: &[String], name: &str) -> Result<Self, AlgebraError> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::Input(format!("unknown variable {name:?}")))?;
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        let mut p = Self::zero_in(vars);
        p.add_term(Mono(e), Rat::one());
        Ok(p)
    }

    pub fn from_terms(
        vars: &[String],
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Self::zero_in(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(AlgebraError::Input(format!(
                    "exponent vector {e:?} does not match {} variables",
                    vars.len()
                )));
            }
            p.add_term(Mono(e), c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Rat {
        self.terms.get(&Mono(e.to_vec())).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Constant value when the polynomial has no variable terms.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        self.is_constant()
            .then(|| self.terms.values().next().unwrap().clone())
    }

    /// Total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[idx]).max()
    }

    pub fn leading_term(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Mono::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &Poly) {
        assert!(
            self.vars == other.vars,
            "polynomial variable lists differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn check_compatible(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch(self.vars.clone(), other.vars.clone()))
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Self::zero_in(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let mut out = Self::zero_in(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Mono(e), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Self::constant_in(&self.vars, Rat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn derivative(&self, idx: usize) -> Poly {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let k = m.0[idx];
            if k == 0 {
                continue;
            }
            let mut e = m.0.clone();
            e[idx] -= 1;
            out.add_term(Mono(e), c * &Rat::from(k));
        }
        out
    }

    /// Evaluates at a point whose coordinates live in a common field.
    pub fn eval<F: Field>(&self, point: &[F]) -> F {
        assert_eq!(point.len(), self.vars.len(), "point dimension mismatch");
        let zero = point[0].zero_like();
        let maxdeg: Vec<u32> = (0..self.vars.len())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<F>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut v = vec![x.one_like()];
                for k in 1..=d as usize {
                    let next = v[k - 1].mul(x);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = point[0].from_rat_like(c);
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitutes `subs[i]` for the `i`-th variable. All substitutes share a
    /// variable list, which becomes the variable list of the result.
    pub fn compose(&self, subs: &[Poly]) -> Poly {
        assert_eq!(subs.len(), self.vars.len(), "one substitute per variable");
        let out_vars = subs[0].vars.clone();
        let maxdeg: Vec<u32> = (0..self.vars.len())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Poly>> = subs
            .iter()
            .zip(&maxdeg)
            .map(|(s, &d)| {
                let mut v = vec![Poly::constant_in(&out_vars, Rat::one())];
                for k in 1..=d as usize {
                    let next = v[k - 1].mul(s);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut acc = Poly::zero_in(&out_vars);
        for (m, c) in &self.terms {
            let mut t = Poly::constant_in(&out_vars, c.clone());
            for (i, &k) in m.0.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&powers[i][k as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces variable `idx` by the rational `value`, keeping the variable list.
    pub fn substitute_value(&self, idx: usize, value: &Rat) -> Poly {
        let mut out = Self::zero_in(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[idx];
            e[idx] = 0;
            out.add_term(Mono(e), c * &value.pow(k));
        }
        out
    }

    /// Re-expresses the polynomial over another variable list containing all
    /// variables that actually occur.
    pub fn with_vars(&self, vars: &[String]) -> Result<Poly, AlgebraError> {
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = Self::zero_in(vars);
        for (m, c) in &self.terms {
            let mut e = vec![0; vars.len()];
            for (i, &k) in m.0.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    AlgebraError::Input(format!("variable {:?} missing from target list", self.vars[i]))
                })?;
                e[j] = k;
            }
            out.add_term(Mono(e), c.clone());
        }
        Ok(out)
    }

    /// Drops variable `idx` from the variable list; it must not occur.
    pub fn drop_var(&self, idx: usize) -> Result<Poly, AlgebraError> {
        let vars: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != idx)
            .map(|(_, v)| v.clone())
            .collect();
        self.with_vars(&vars)
    }

    /// Coefficients with respect to variable `idx`, from degree 0 upwards.
    /// The coefficients keep the full variable list.
    pub fn to_univariate(&self, idx: usize) -> Vec<Poly> {
        let d = self.degree_in(idx).unwrap_or(0) as usize;
        let mut out = vec![Self::zero_in(&self.vars); d + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let k = e[idx] as usize;
            e[idx] = 0;
            out[k].add_term(Mono(e), c.clone());
        }
        out
    }

    /// Converts a polynomial involving at most variable `idx` to a [`QPoly`].
    pub fn to_qpoly(&self, idx: usize) -> Result<QPoly, AlgebraError> {
        let d = self.degree_in(idx).unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); d + 1];
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().any(|(i, &k)| i != idx && k > 0) {
                return Err(AlgebraError::Input(format!(
                    "polynomial is not univariate in {:?}",
                    self.vars[idx]
                )));
            }
            coeffs[m.0[idx] as usize] = c.clone();
        }
        Ok(QPoly::new(coeffs))
    }

    /// Univariate `QPoly` placed in variable `idx` of `vars`.
    pub fn from_qpoly(vars: &[String], idx: usize, p: &QPoly) -> Poly {
        let mut out = Self::zero_in(vars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut e = vec![0; vars.len()];
            e[idx] = k as u32;
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Homogenizes with a new trailing variable.
    pub fn homogenize(&self, new_var: &str) -> Poly {
        let d = self.total_degree().unwrap_or(0);
        let mut vars = self.vars.clone();
        vars.push(new_var.to_string());
        let mut out = Self::zero_in(&vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.push(d - m.degree());
            out.add_term(Mono(e), c.clone());
        }
        out
    }

    /// Exact division; fails when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly, AlgebraError> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = lc.recip()?;
        let mut rem = self.clone();
        let mut quot = Self::zero_in(&self.vars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(AlgebraError::InexactDivision);
            }
            let e: Vec<u32> = m.0.iter().zip(&lm.0).map(|(a, b)| a - b).collect();
            let q = c * &lc_inv;
            let mut t = Self::zero_in(&self.vars);
            t.add_term(Mono(e), q);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Ok(quot)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|&(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&mono.join("*"))?;
            } else {
                write!(f, "{a}*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u32>,
    coef: Rat,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| TermRepr {
                    exp: m.0.clone(),
                    coef: c.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyRepr::deserialize(deserializer)?;
        Poly::from_terms(&repr.vars, repr.terms.into_iter().map(|t| (t.exp, t.coef)))
            .map_err(serde::de::Error::custom)
    }
}
