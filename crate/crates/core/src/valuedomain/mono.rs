//! Variables and monomials `c * q^e0 * B^e1 * C^e2 * D^e3 * z^e4`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use super::rat::{parse_rat, rat_to_string, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const NVARS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Q = 0,
    B = 1,
    C = 2,
    D = 3,
    Z = 4,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Q, Var::B, Var::C, Var::D, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Q => "q",
            Var::B => "B",
            Var::C => "C",
            Var::D => "D",
            Var::Z => "z",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    /// The projective parameters; expressions built from word data are
    /// homogeneous in these.
    pub fn is_projective(self) -> bool {
        matches!(self, Var::B | Var::C | Var::D)
    }
}

/// A point assignment; unassigned variables are `None`.
pub type Point<S> = [Option<S>; NVARS];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub coef: Rat,
    pub exps: [i32; NVARS],
}

impl Monomial {
    pub fn new(coef: Rat, exps: [i32; NVARS]) -> Self {
        Monomial { coef, exps }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(coef: Rat) -> Self {
        Monomial { coef, exps: [0; NVARS] }
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0; NVARS];
        exps[v.index()] = 1;
        Monomial { coef: Rat::one(), exps }
    }

    pub fn q_pow(e: i32) -> Self {
        Monomial::one().times_q(e)
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.exps[v.index()]
    }

    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.coef.is_one()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, f) in exps.iter_mut().zip(o.exps) {
            *e += f;
        }
        Monomial { coef: &self.coef * &o.coef, exps }
    }

    pub fn inv(&self) -> Option<Monomial> {
        if self.coef.is_zero() {
            return None;
        }
        Some(Monomial { coef: self.coef.recip(), exps: self.exps.map(|e| -e) })
    }

    pub fn div(&self, o: &Monomial) -> Option<Monomial> {
        Some(self.mul(&o.inv()?))
    }

    pub fn times_q(&self, e: i32) -> Monomial {
        let mut m = self.clone();
        m.exps[0] += e;
        m
    }

    pub fn scaled(&self, c: &Rat) -> Monomial {
        Monomial { coef: &self.coef * c, exps: self.exps }
    }

    /// Degree in the projective variables B, C, D.
    pub fn projective_degree(&self) -> i32 {
        self.exps[1] + self.exps[2] + self.exps[3]
    }

    /// Evaluates at a point; `proto` supplies the field context.
    pub fn eval<S: Scalar>(&self, point: &Point<S>, proto: &S) -> Result<S> {
        let mut acc = proto.lift(&self.coef).ok_or(Error::PoleAtPoint)?;
        for v in Var::ALL {
            let e = self.exps[v.index()];
            if e == 0 {
                continue;
            }
            let x = point[v.index()].as_ref().ok_or(Error::MissingVariable(v.name()))?;
            acc = acc.mul(&x.pow_i(e as i64).ok_or(Error::PoleAtPoint)?);
        }
        Ok(acc)
    }

    /// Parses `2*q^3*B`, `-q^-1*D^2/3`-style products. Factors are separated by
    /// `*`; a factor is a rational literal or a variable with optional `^exp`.
    pub fn parse(text: &str) -> Result<Monomial> {
        let t = text.trim();
        if t.is_empty() {
            return Err(Error::Parse { pos: 0, msg: "empty monomial".into() });
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) if rest.starts_with(|c: char| c.is_ascii_alphabetic()) => (true, rest),
            _ => (false, t),
        };
        let mut m = Monomial::one();
        let mut pos = if neg { 1 } else { 0 };
        for part in body.split('*') {
            let p = part.trim();
            let err = |msg: &str| Error::Parse { pos, msg: format!("{msg}: {p:?}") };
            if p.starts_with(|c: char| c.is_ascii_alphabetic()) {
                let (name, e) = match p.split_once('^') {
                    Some((n, e)) => (n.trim(), e.trim().parse::<i32>().map_err(|_| err("bad exponent"))?),
                    None => (p, 1),
                };
                let v = Var::from_name(name).ok_or_else(|| err("unknown variable"))?;
                m.exps[v.index()] += e;
            } else {
                let c = parse_rat(p).ok_or_else(|| err("bad coefficient"))?;
                m.coef *= c;
            }
            pos += part.len() + 1;
        }
        if neg {
            m.coef = -m.coef;
        }
        Ok(m)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut prefix = "";
        if self.is_constant() || !self.coef.abs().is_one() {
            parts.push(rat_to_string(&self.coef));
        } else if self.coef.is_negative() {
            prefix = "-";
        }
        for v in Var::ALL {
            match self.exps[v.index()] {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{}", v.name(), e)),
            }
        }
        write!(f, "{prefix}{}", parts.join("*"))
    }
}
