//! Exact rationals and the text form used in reports.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Canonical arbitrary-precision rational (coprime parts, positive denominator).
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

/// Integer power with negative exponents allowed; `None` for `0^e`, `e < 0`.
pub fn rat_pow(base: &Rat, e: i64) -> Option<Rat> {
    if e < 0 {
        if base.is_zero() {
            return None;
        }
        return Some(num_traits::pow(base.recip(), e.unsigned_abs() as usize));
    }
    Some(num_traits::pow(base.clone(), e as usize))
}

/// log2 of |r| numerator + log2 of its denominator, used in height bounds.
pub(crate) fn log2_height(n: &BigInt) -> f64 {
    let n = n.abs();
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 52 {
        (n.to_string().parse::<f64>().unwrap_or(1.0)).log2()
    } else {
        bits as f64
    }
}
