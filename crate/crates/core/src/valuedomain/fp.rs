//! Prime-field elements for randomized and multi-modular identity testing.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::rat::Rat;

/// Largest prime below 2^62.
pub const DEFAULT_PRIME: u64 = (1u64 << 62) - 57;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FpElem {
    v: u64,
    p: u64,
}

impl fmt::Debug for FpElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.v, self.p)
    }
}

#[allow(clippy::should_implement_trait)]
impl FpElem {
    pub fn new(v: u64, p: u64) -> Self {
        FpElem { v: v % p, p }
    }

    pub fn from_i64(v: i64, p: u64) -> Self {
        let r = (v as i128).rem_euclid(p as i128) as u64;
        FpElem { v: r, p }
    }

    /// Reduces a rational; `None` when the denominator vanishes mod p.
    pub fn from_rat(r: &Rat, p: u64) -> Option<Self> {
        let n = reduce_bigint(r.numer(), p);
        let d = reduce_bigint(r.denom(), p);
        FpElem { v: d, p }.inv().map(|di| FpElem { v: n, p }.mul(di))
    }

    pub fn value(self) -> u64 {
        self.v
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.v == 0
    }

    #[inline]
    pub fn add(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let s = self.v + o.v;
        FpElem { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }

    #[inline]
    pub fn sub(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let v = if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v };
        FpElem { v, p: self.p }
    }

    #[inline]
    pub fn neg(self) -> Self {
        FpElem { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }

    #[inline]
    pub fn mul(self, o: Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        FpElem { v: ((self.v as u128 * o.v as u128) % self.p as u128) as u64, p: self.p }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = FpElem { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Extended Euclid; `None` at zero.
    pub fn inv(self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, self.v as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus is not prime");
        Some(FpElem { v: s0.rem_euclid(self.p as i128) as u64, p: self.p })
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    n.mod_floor(&m).to_u64().unwrap_or(0)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below 2^62, descending. All exceed 2^61.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = DEFAULT_PRIME;
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}
