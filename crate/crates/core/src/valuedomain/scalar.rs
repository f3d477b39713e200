//! Field elements that expressions can be evaluated into.

use num_traits::{One, ToPrimitive, Zero};

use super::fp::FpElem;
use super::rat::Rat;

/// A field with a runtime context carried by its elements (the modulus for
/// `FpElem`). `lift` and the `*_like` constructors take that context from
/// `self`.
pub trait Scalar: Clone + Send + Sync + std::fmt::Debug {
    fn lift(&self, r: &Rat) -> Option<Self>;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn vanishes(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn show(&self) -> String;

    fn pow_i(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        Some(acc)
    }
}

impl Scalar for Rat {
    fn lift(&self, r: &Rat) -> Option<Self> {
        Some(r.clone())
    }
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn show(&self) -> String {
        super::rat::rat_to_string(self)
    }
}

impl Scalar for FpElem {
    fn lift(&self, r: &Rat) -> Option<Self> {
        FpElem::from_rat(r, self.modulus())
    }
    fn zero_like(&self) -> Self {
        FpElem::new(0, self.modulus())
    }
    fn one_like(&self) -> Self {
        FpElem::new(1, self.modulus())
    }
    fn add(&self, o: &Self) -> Self {
        FpElem::add(*self, *o)
    }
    fn sub(&self, o: &Self) -> Self {
        FpElem::sub(*self, *o)
    }
    fn mul(&self, o: &Self) -> Self {
        FpElem::mul(*self, *o)
    }
    fn neg(&self) -> Self {
        FpElem::neg(*self)
    }
    fn vanishes(&self) -> bool {
        FpElem::is_zero(*self)
    }
    fn inv(&self) -> Option<Self> {
        FpElem::inv(*self)
    }
    fn show(&self) -> String {
        self.value().to_string()
    }
}

impl Scalar for f64 {
    fn lift(&self, r: &Rat) -> Option<Self> {
        r.to_f64()
    }
    fn zero_like(&self) -> Self {
        0.0
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn vanishes(&self) -> bool {
        *self == 0.0
    }
    fn inv(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }
    fn show(&self) -> String {
        format!("{self:e}")
    }
}
