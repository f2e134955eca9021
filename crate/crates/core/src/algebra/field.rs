use std::fmt::Debug;

use super::mgcd::gcd_integer;
use super::{QPoly, Rat, UPoly};

/// Element of an exact field.
///
/// Elements of an algebraic extension carry their field with them, so the
/// constants `0` and `1` are produced from an existing element.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn from_rat_like(&self, r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        self.sub(&self.one_like()).is_zero()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    /// Monic gcd by a method specific to the field, where one exists.
    fn upoly_gcd(_a: &UPoly<Self>, _b: &UPoly<Self>) -> Option<UPoly<Self>> {
        None
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn from_rat_like(&self, r: &Rat) -> Self {
        r.clone()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
    fn is_one(&self) -> bool {
        Rat::is_one(self)
    }
    fn upoly_gcd(a: &QPoly, b: &QPoly) -> Option<QPoly> {
        if a.is_zero() || b.is_zero() {
            return None;
        }
        let g = gcd_integer(&a.primitive_integer(), &b.primitive_integer());
        Some(QPoly::from_bigints(&g).monic())
    }
}
