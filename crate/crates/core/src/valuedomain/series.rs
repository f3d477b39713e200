//! Truncated bivariate power series in (q, z) with rational coefficients.

use num_traits::{One, Zero};

use super::rat::{rat_to_string, Rat};
use crate::error::{Error, Result};

/// Element of Q[[q, z]] modulo (q^(mq+1), z^(mz+1)), stored row-major by q-power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    mq: usize,
    mz: usize,
    c: Vec<Rat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    Negate,
}

impl BiSeries {
    pub fn zero(mq: usize, mz: usize) -> Self {
        BiSeries { mq, mz, c: vec![Rat::zero(); (mq + 1) * (mz + 1)] }
    }

    pub fn one(mq: usize, mz: usize) -> Self {
        Self::constant(Rat::one(), mq, mz)
    }

    pub fn constant(c: Rat, mq: usize, mz: usize) -> Self {
        let mut s = Self::zero(mq, mz);
        s.c[0] = c;
        s
    }

    /// `coef * q^i * z^j`, zero if beyond the truncation.
    pub fn monomial(coef: Rat, i: usize, j: usize, mq: usize, mz: usize) -> Self {
        let mut s = Self::zero(mq, mz);
        if i <= mq && j <= mz {
            s.c[i * (mz + 1) + j] = coef;
        }
        s
    }

    /// Univariate series from q-coefficients (missing entries are zero).
    pub fn from_q_coeffs(coeffs: &[Rat], mq: usize) -> Self {
        let mut s = Self::zero(mq, 0);
        for (i, c) in coeffs.iter().enumerate().take(mq + 1) {
            s.c[i] = c.clone();
        }
        s
    }

    pub fn orders(&self) -> (usize, usize) {
        (self.mq, self.mz)
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.c[i * (self.mz + 1) + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Rat {
        &mut self.c[i * (self.mz + 1) + j]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Coefficients of q^0..q^mq at z^0.
    pub fn q_coeffs(&self) -> Vec<Rat> {
        (0..=self.mq).map(|i| self.get(i, 0).clone()).collect()
    }

    /// Rows indexed by q-power, each a vector over z-powers.
    pub fn rows(&self) -> Vec<Vec<Rat>> {
        self.c.chunks(self.mz + 1).map(|r| r.to_vec()).collect()
    }

    /// Coefficients as exact strings; flat when `mz = 0`.
    pub fn to_json(&self) -> serde_json::Value {
        let row = |r: &[Rat]| serde_json::Value::Array(r.iter().map(|x| rat_to_string(x).into()).collect());
        if self.mz == 0 {
            row(&self.c)
        } else {
            serde_json::Value::Array(self.c.chunks(self.mz + 1).map(row).collect())
        }
    }

    /// Lowers the truncation orders.
    pub fn truncate(&self, mq: usize, mz: usize) -> Self {
        assert!(mq <= self.mq && mz <= self.mz, "truncate can only lower orders");
        let mut s = Self::zero(mq, mz);
        for i in 0..=mq {
            for j in 0..=mz {
                *s.get_mut(i, j) = self.get(i, j).clone();
            }
        }
        s
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.orders() != o.orders() {
            return Err(Error::OrderMismatch(self.orders(), o.orders()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect();
        Ok(BiSeries { mq: self.mq, mz: self.mz, c })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let c = self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect();
        Ok(BiSeries { mq: self.mq, mz: self.mz, c })
    }

    pub fn neg(&self) -> Self {
        BiSeries { mq: self.mq, mz: self.mz, c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        BiSeries { mq: self.mq, mz: self.mz, c: self.c.iter().map(|a| a * k).collect() }
    }

    pub fn add_assign(&mut self, o: &Self) {
        debug_assert_eq!(self.orders(), o.orders());
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }

    /// Truncated product.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let (mq, mz) = (self.mq, self.mz);
        let mut out = Self::zero(mq, mz);
        for i1 in 0..=mq {
            for j1 in 0..=mz {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..=mq - i1 {
                    for j2 in 0..=mz - j1 {
                        let b = o.get(i2, j2);
                        if !b.is_zero() {
                            *out.get_mut(i1 + i2, j1 + j2) += a * b;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Multiplies by `coef * q^di * z^dj`.
    pub fn mul_monomial(&self, coef: &Rat, di: usize, dj: usize) -> Self {
        let mut out = Self::zero(self.mq, self.mz);
        if coef.is_zero() {
            return out;
        }
        for i in 0..=self.mq.saturating_sub(di) {
            for j in 0..=self.mz.saturating_sub(dj) {
                if i + di <= self.mq && j + dj <= self.mz {
                    let a = self.get(i, j);
                    if !a.is_zero() {
                        *out.get_mut(i + di, j + dj) = a * coef;
                    }
                }
            }
        }
        out
    }

    /// Divides by `1 - coef * q^di * z^dj`, which must have positive order.
    pub fn div_one_minus(&self, coef: &Rat, di: usize, dj: usize) -> Result<Self> {
        if di == 0 && dj == 0 {
            return Err(Error::NonpositiveOrder);
        }
        let mut out = self.clone();
        for i in di..=self.mq {
            for j in dj..=self.mz {
                let prev = out.get(i - di, j - dj).clone();
                if !prev.is_zero() {
                    *out.get_mut(i, j) += prev * coef;
                }
            }
        }
        Ok(out)
    }
}

/// Ring operation on two series of equal orders (`b` is ignored for `Negate`).
pub fn series_op(a: &BiSeries, b: &BiSeries, op: SeriesOp) -> Result<BiSeries> {
    match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Negate => Ok(a.neg()),
    }
}

/// `sum_{i>=1} ratio^i` with `ratio = coef * q^di * z^dj` of positive order.
pub fn series_geom(coef: &Rat, di: usize, dj: usize, mq: usize, mz: usize) -> Result<BiSeries> {
    let m = BiSeries::monomial(coef.clone(), di, dj, mq, mz);
    if di == 0 && dj == 0 {
        return Err(Error::NonpositiveOrder);
    }
    m.div_one_minus(coef, di, dj)
}
