//! Position-dependent q-shift exponents and parameter assignments.

use std::fmt;

use crate::error::{Error, Result};
use crate::valuedomain::{Monomial, Var};
use crate::words::{Letter6, Mark, Word6};

/// A projective parameter value.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Zero,
    Infinity,
    Mono(Monomial),
}

impl Param {
    pub fn var(v: Var) -> Param {
        Param::Mono(Monomial::var(v))
    }

    pub fn mono(m: Monomial) -> Param {
        if num_traits::Zero::is_zero(&m.coef) {
            Param::Zero
        } else {
            Param::Mono(m)
        }
    }

    /// Multiplies by `q^e`; Zero and Infinity absorb the shift.
    pub fn shift_q(&self, e: i32) -> Param {
        match self {
            Param::Mono(m) => Param::Mono(m.times_q(e)),
            other => other.clone(),
        }
    }

    pub fn as_mono(&self) -> Option<&Monomial> {
        match self {
            Param::Mono(m) => Some(m),
            _ => None,
        }
    }

    /// Parses `0`, `inf`, or a monomial such as `2*q^3*B`.
    pub fn parse(s: &str) -> Result<Param> {
        match s.trim() {
            "0" => Ok(Param::Zero),
            "inf" | "infinity" => Ok(Param::Infinity),
            t => Ok(Param::mono(Monomial::parse(t)?)),
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Zero => f.write_str("0"),
            Param::Infinity => f.write_str("inf"),
            Param::Mono(m) => write!(f, "{m}"),
        }
    }
}

/// Values of A, B, C, D together with the chain length N. Chains run over
/// `t = A q^(-n)`, `0 <= n <= N`, so `A = q^N D` whenever D is a monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub n: u32,
    pub a: Param,
    pub b: Param,
    pub c: Param,
    pub d: Param,
}

impl Assignment {
    /// `A = q^N D` with B, C, D given.
    pub fn with(n: u32, b: Param, c: Param, d: Param) -> Assignment {
        let a = d.shift_q(n as i32);
        Assignment { n, a, b, c, d }
    }

    /// B, C, D symbolic.
    pub fn generic(n: u32) -> Assignment {
        Self::with(n, Param::var(Var::B), Param::var(Var::C), Param::var(Var::D))
    }

    /// B = C = infinity with D symbolic.
    pub fn bc_infinite(n: u32) -> Assignment {
        Self::with(n, Param::Infinity, Param::Infinity, Param::var(Var::D))
    }

    /// A = D, which forces N = 0.
    pub fn a_eq_d() -> Assignment {
        Self::generic(0)
    }

    /// `AD = BC q^m` solved for C: `C = q^(N-m) D^2 / B`.
    pub fn ad_eq_bc(n: u32, m: usize) -> Assignment {
        let mut c = Monomial::var(Var::D).mul(&Monomial::var(Var::D)).div(&Monomial::var(Var::B)).expect("nonzero");
        c = c.times_q(n as i32 - m as i32);
        Self::with(n, Param::var(Var::B), Param::Mono(c), Param::var(Var::D))
    }

    pub fn param(&self, m: Mark) -> &Param {
        match m {
            Mark::A => &self.a,
            Mark::B => &self.b,
            Mark::C => &self.c,
            Mark::D => &self.d,
        }
    }

    /// The base point of the chains.
    pub fn x_scale(&self) -> Result<Monomial> {
        self.a.as_mono().cloned().ok_or_else(|| Error::Invalid("A must be a monomial for finite chains".into()))
    }
}

pub type Quad = [i32; 4];

fn mark_index(m: Mark) -> usize {
    match m {
        Mark::A => 0,
        Mark::B => 1,
        Mark::C => 2,
        Mark::D => 3,
    }
}

/// Shift exponents of a word, one quadruple `(a, b, c, d)` per position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftTable {
    /// Exponents of `A^(j), B^(j), C^(j), D^(j)`.
    pub direct: Vec<Quad>,
    /// Exponents of `A^[j], B^[j], C^[j], D^[j]`.
    pub dual: Vec<Quad>,
}

impl ShiftTable {
    pub fn len(&self) -> usize {
        self.direct.len()
    }

    pub fn is_empty(&self) -> bool {
        self.direct.is_empty()
    }

    /// Exponent of mark `m` at 1-based position `j`.
    pub fn exponent(&self, j: usize, m: Mark) -> i32 {
        self.direct[j - 1][mark_index(m)]
    }

    pub fn dual_exponent(&self, j: usize, m: Mark) -> i32 {
        self.dual[j - 1][mark_index(m)]
    }
}

fn count(w: &[Letter6], range: impl Iterator<Item = usize>, pred: impl Fn(Letter6) -> bool) -> i32 {
    range.filter(|&h| pred(w[h])).count() as i32
}

fn is_in(l: Letter6, set: &[Letter6]) -> bool {
    set.contains(&l)
}

use Letter6::{AB, AC, AD, BC, BD, CD};

pub fn shift_table(w: &Word6) -> ShiftTable {
    let u = w.letters();
    let k = u.len();
    let mut direct = Vec::with_capacity(k);
    let mut dual = Vec::with_capacity(k);
    for j in 0..k {
        let le = || 0..=j;
        let ge = || j..k;
        direct.push([
            count(u, le(), |l| is_in(l, &[BC, BD, CD])),
            count(u, le(), |l| !is_in(l, &[AC, AD])) + count(u, ge(), |l| l == CD),
            count(u, le(), |l| !is_in(l, &[AB, AD])) + count(u, ge(), |l| l == BD),
            -count(u, ge(), |l| is_in(l, &[AB, AC, BC])),
        ]);
        dual.push([
            count(u, ge(), |l| is_in(l, &[AB, AC, BC])),
            count(u, ge(), |l| !is_in(l, &[AD, BD])) + count(u, le(), |l| l == AB),
            count(u, ge(), |l| !is_in(l, &[AD, CD])) + count(u, le(), |l| l == AC),
            -count(u, le(), |l| is_in(l, &[BC, BD, CD])),
        ]);
    }
    ShiftTable { direct, dual }
}

/// The step table for `0 <= j <= k`: strict inequalities on the suffix side.
/// Entry `j` agrees with the direct table on the marks of the j-th letter.
pub fn strict_table(w: &Word6) -> Vec<Quad> {
    let u = w.letters();
    let k = u.len();
    (0..=k)
        .map(|j| {
            let le = || 0..j;
            let gt = || j..k;
            [
                count(u, le(), |l| is_in(l, &[BC, BD, CD])),
                count(u, le(), |l| !is_in(l, &[AC, AD])) + count(u, gt(), |l| l == CD),
                count(u, le(), |l| !is_in(l, &[AB, AD])) + count(u, gt(), |l| l == BD),
                -count(u, gt(), |l| is_in(l, &[AB, AC, BC])),
            ]
        })
        .collect()
}

/// Primed exponents `(a'_j, b'_j, c'_j, d'_j)`, `1 <= j <= k`, of a word `u'`
/// (meant to be applied to `tau(w)`).
pub fn primed_table(u_prime: &Word6) -> Vec<Quad> {
    let u = u_prime.letters();
    let k = u.len();
    (0..k)
        .map(|j| {
            let lt = || 0..j;
            let ge = || j..k;
            [
                count(u, lt(), |l| is_in(l, &[BC, BD, CD])),
                1 + count(u, lt(), |l| !is_in(l, &[AC, AD])) + count(u, ge(), |l| l == CD),
                1 + count(u, lt(), |l| !is_in(l, &[AB, AD])) + count(u, ge(), |l| l == BD),
                -count(u, ge(), |l| is_in(l, &[AB, AC, BC])),
            ]
        })
        .collect()
}

/// Per-letter increment of the step table.
pub fn increment_vector(l: Letter6) -> Quad {
    match l {
        AB => [0, 1, 0, 1],
        AC => [0, 0, 1, 1],
        AD => [0, 0, 0, 0],
        BC => [1, 1, 1, 1],
        BD => [1, 1, 0, 0],
        CD => [1, 0, 1, 0],
    }
}

/// `(u_j^(j), v_j^(j))` for 1-based `j`.
pub fn shifted_pair(w: &Word6, j: usize, asg: &Assignment) -> (Param, Param) {
    shifted_pair_with(&shift_table(w), w, j, asg)
}

pub fn shifted_pair_with(t: &ShiftTable, w: &Word6, j: usize, asg: &Assignment) -> (Param, Param) {
    let (u, v) = w.letters()[j - 1].marks();
    (asg.param(u).shift_q(t.exponent(j, u)), asg.param(v).shift_q(t.exponent(j, v)))
}

/// For each position and each mark `X` of the letter there, the pair
/// `(A D / sigma(X)^[j], X^(j))`. Under `AD = BC q^m(w)` the two agree.
pub fn mirror_pairs(w: &Word6, asg: &Assignment) -> Result<Vec<(Monomial, Monomial)>> {
    let t = shift_table(w);
    let ad = asg.a.as_mono().ok_or(Error::ZeroParameter)?.mul(asg.d.as_mono().ok_or(Error::ZeroParameter)?);
    let mut out = Vec::new();
    for (j, l) in w.letters().iter().enumerate() {
        let (u, v) = l.marks();
        for x in [u, v] {
            let s = x.sigma();
            let dual = asg.param(s).shift_q(t.dual_exponent(j + 1, s));
            let dual = dual.as_mono().ok_or(Error::ZeroParameter)?;
            let lhs = ad.div(dual).ok_or(Error::ZeroParameter)?;
            let rhs = asg.param(x).shift_q(t.exponent(j + 1, x));
            out.push((lhs, rhs.as_mono().ok_or(Error::ZeroParameter)?.clone()));
        }
    }
    Ok(out)
}
