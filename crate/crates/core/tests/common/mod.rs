//! Independent oracles shared by the integration tests, plus the
//! cross-formulation checks used by both the bridge tests and the
//! acceptance run.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use qdual::qint::{iq, lq, z_functional, ExprDomain, FactorSpec, PointDomain};
use qdual::shifts::{Assignment, Param};
use qdual::valuedomain::{rat, values_equal, LazyExpr, Mode, Monomial, Rat, Verdict};
use qdual::words::{Collapsed, Letter6, Word6};
use rand::Rng;

pub fn pow(q: &Rat, e: i64) -> Rat {
    let b = if e < 0 { q.recip() } else { q.clone() };
    (0..e.unsigned_abs()).fold(Rat::one(), |acc, _| acc * &b)
}

/// Parameter values for the brute-force enumerator.
#[derive(Clone, Debug)]
pub enum P {
    Zero,
    Inf,
    Val(Rat),
}

/// `t/(t-u)` or the bracket `t/(t-u) - t/(t-v)`.
#[derive(Clone, Debug)]
pub enum F {
    One(P),
    Two(P, P),
}

pub fn kernel(t: &Rat, u: &P) -> Option<Rat> {
    match u {
        P::Zero => Some(Rat::one()),
        P::Inf => Some(Rat::zero()),
        P::Val(u) => {
            let d = t - u;
            (!d.is_zero()).then(|| t / d)
        }
    }
}

fn factor(t: &Rat, f: &F) -> Option<Rat> {
    match f {
        F::One(u) => kernel(t, u),
        F::Two(u, v) => Some(kernel(t, u)? - kernel(t, v)?),
    }
}

/// Every nondecreasing sequence of length `k` with entries in `0..=n`.
pub fn chains(k: usize, n: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for c in chains(k - 1, n) {
        let lo = c.last().copied().unwrap_or(0);
        for m in lo..=n {
            let mut d = c.clone();
            d.push(m);
            out.push(d);
        }
    }
    out
}

/// `I_q(x; f_1, ..., f_k; x q^-N)` by listing every chain; `None` at a pole.
pub fn naive_iq(x: &Rat, q: &Rat, fs: &[F], n: u32) -> Option<Rat> {
    let mut total = Rat::zero();
    for c in chains(fs.len(), n) {
        let mut p = Rat::one();
        for (f, &m) in fs.iter().zip(&c) {
            p *= factor(&(x * pow(q, -(m as i64))), f)?;
        }
        total += p;
    }
    Some(total)
}

pub fn to_param(p: &P) -> Param {
    match p {
        P::Zero => Param::Zero,
        P::Inf => Param::Infinity,
        P::Val(v) => Param::mono(Monomial::constant(v.clone())),
    }
}

pub fn to_spec(f: &F) -> FactorSpec {
    match f {
        F::One(u) => FactorSpec::Single(to_param(u)),
        F::Two(u, v) => FactorSpec::Bracket(to_param(u), to_param(v)),
    }
}

/// The dynamic-programming evaluator at a numeric q; `None` at a pole.
pub fn dp_iq(x: &Rat, q: &Rat, fs: &[F], n: u32) -> Option<Rat> {
    let specs: Vec<FactorSpec> = fs.iter().map(to_spec).collect();
    iq(&mut PointDomain::q_only(q.clone()), &Monomial::constant(x.clone()), &specs, n).ok()
}

pub fn small_rat(rng: &mut impl Rng) -> Rat {
    let d = rng.gen_range(1..=4);
    rat(rng.gen_range(-6..=6), d)
}

pub fn nonzero_rat(rng: &mut impl Rng) -> Rat {
    loop {
        let r = small_rat(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// A q away from 0 and the roots of unity.
pub fn random_q(rng: &mut impl Rng) -> Rat {
    loop {
        let r = nonzero_rat(rng);
        if r != Rat::one() && r != -Rat::one() {
            return r;
        }
    }
}

pub fn random_param(rng: &mut impl Rng) -> P {
    match rng.gen_range(0..10) {
        0 => P::Zero,
        1 => P::Inf,
        _ => P::Val(nonzero_rat(rng)),
    }
}

/// One instance of the q-difference identity with single factors.
#[derive(Clone, Debug)]
pub struct DiffCase {
    pub q: Rat,
    pub x: Rat,
    /// `a_1..a_k`; `None` stands for 0.
    pub a: Vec<Option<Rat>>,
    pub n: u32,
    pub h: usize,
}

impl DiffCase {
    pub fn random(rng: &mut impl Rng, k_max: usize) -> DiffCase {
        let k = rng.gen_range(1..=k_max);
        DiffCase {
            q: random_q(rng),
            x: nonzero_rat(rng),
            a: (0..k).map(|_| if rng.gen_range(0..5) == 0 { None } else { Some(nonzero_rat(rng)) }).collect(),
            n: rng.gen_range(1..=3),
            h: rng.gen_range(0..=k),
        }
    }

    fn factors(a: &[Option<Rat>], shift_from: usize, q: &Rat) -> Vec<F> {
        a.iter()
            .enumerate()
            .map(|(i, v)| match v {
                None => F::One(P::Zero),
                Some(v) if i >= shift_from => F::One(P::Val(v * q)),
                Some(v) => F::One(P::Val(v.clone())),
            })
            .collect()
    }

    fn value(&self, a: &[Option<Rat>], shift_from: usize, n: u32) -> Option<Rat> {
        dp_iq(&self.x, &self.q, &Self::factors(a, shift_from, &self.q), n)
    }

    /// `a_j` for `0 <= j <= k + 1`, with `a_0 = x` and `a_{k+1} = x q^-N`.
    fn endpoint(&self, j: usize) -> Rat {
        let k = self.a.len();
        if j == 0 {
            self.x.clone()
        } else if j == k + 1 {
            &self.x * pow(&self.q, -(self.n as i64))
        } else {
            self.a[j - 1].clone().unwrap_or_else(Rat::zero)
        }
    }

    fn without(&self, j: usize) -> Vec<Option<Rat>> {
        let mut a = self.a.clone();
        a.remove(j - 1);
        a
    }

    /// Both sides of the identity, or `None` when a pole intervenes.
    pub fn difference_sides(&self) -> Option<(Rat, Rat)> {
        let (h, k) = (self.h, self.a.len());
        let (ah, ah1) = (self.endpoint(h), self.endpoint(h + 1));
        if ah == ah1 {
            return None;
        }
        let lhs = self.value(&self.a, k, self.n)? - self.value(&self.a, h, self.n - 1)?;
        let mut rhs = Rat::zero();
        if h < k {
            rhs += &ah * self.value(&self.without(h + 1), k, self.n)? / (&ah - &ah1);
        }
        if h > 0 {
            rhs += &ah1 * self.value(&self.without(h), k, self.n)? / (&ah1 - &ah);
        }
        Some((lhs, rhs))
    }

    /// The zero-insertion identity with the zero placed after `a_h`.
    pub fn zero_insertion_sides(&self) -> Option<(Rat, Rat)> {
        let k = self.a.len();
        let mut ins = self.a.clone();
        ins.insert(self.h, None);
        let lhs = self.value(&ins, k + 1, self.n)? - self.value(&ins, self.h, self.n - 1)?;
        let rhs = self.value(&self.a, k, self.n)?;
        Some((lhs, rhs))
    }
}

/// Exponents of `(q, B, C, D)`.
pub type Exps = [i32; 4];

/// Sparse Laurent polynomial in q, B, C, D.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MPoly(pub BTreeMap<Exps, Rat>);

impl MPoly {
    pub fn term(c: Rat, e: Exps) -> MPoly {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        MPoly(m)
    }

    pub fn constant(c: i64) -> MPoly {
        Self::term(rat(c, 1), [0; 4])
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut m = self.0.clone();
        for (e, c) in &o.0 {
            let v = m.entry(*e).or_insert_with(Rat::zero);
            *v += c;
            if v.is_zero() {
                m.remove(e);
            }
        }
        MPoly(m)
    }

    pub fn neg(&self) -> MPoly {
        MPoly(self.0.iter().map(|(e, c)| (*e, -c)).collect())
    }

    pub fn sub(&self, o: &MPoly) -> MPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut acc = MPoly::default();
        for (e1, c1) in &self.0 {
            for (e2, c2) in &o.0 {
                let e = [e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]];
                acc = acc.add(&MPoly::term(c1 * c2, e));
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, pt: &[Rat; 4]) -> Rat {
        self.0
            .iter()
            .map(|(e, c)| (0..4).fold(c.clone(), |acc, i| acc * pow(&pt[i], e[i] as i64)))
            .sum()
    }
}

/// Unreduced quotient of two sparse polynomials.
#[derive(Clone, Debug)]
pub struct MFrac {
    pub num: MPoly,
    pub den: MPoly,
}

impl MFrac {
    pub fn add(&self, o: &MFrac) -> MFrac {
        MFrac { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn mul(&self, o: &MFrac) -> MFrac {
        MFrac { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn same_as(&self, o: &MFrac) -> bool {
        self.num.mul(&o.den).sub(&o.num.mul(&self.den)).is_zero()
    }

    pub fn eval(&self, pt: &[Rat; 4]) -> Option<Rat> {
        let d = self.den.eval(pt);
        (!d.is_zero()).then(|| self.num.eval(pt) / d)
    }
}

fn mono(e: Exps) -> MPoly {
    MPoly::term(Rat::one(), e)
}

/// `t/(t-u) - t/(t-v) = t (u - v) / ((t - u)(t - v))`.
fn sparse_bracket(t: Exps, u: Exps, v: Exps) -> MFrac {
    let (t, u, v) = (mono(t), mono(u), mono(v));
    MFrac { num: t.mul(&u.sub(&v)), den: t.sub(&u).mul(&t.sub(&v)) }
}

/// Sum over chains `0 <= n_1 <= n_2 <= 1` of two brackets at `t = A q^-n`,
/// `A = q D`; each bracket is a pair of shifted monomials.
fn sparse_two_letter(b1: (Exps, Exps), b2: (Exps, Exps)) -> MFrac {
    let t = |n: i32| [1 - n, 0, 0, 1];
    let mut acc = MFrac { num: MPoly::default(), den: MPoly::constant(1) };
    for c in chains(2, 1) {
        let f1 = sparse_bracket(t(c[0] as i32), b1.0, b1.1);
        let f2 = sparse_bracket(t(c[1] as i32), b2.0, b2.1);
        acc = acc.add(&f1.mul(&f2));
    }
    acc
}

/// `L_q((BD)(AB))` and `L_q((CD)(AC))` at N = 1, with the shifted parameters
/// counted by hand: `[Bq, Dq^-1], [Aq, Bq^2]` and `[Cq, Dq^-1], [Aq, Cq^2]`.
pub fn bd_ab_pair_sparse() -> (MFrac, MFrac) {
    let w = sparse_two_letter(([1, 1, 0, 0], [-1, 0, 0, 1]), ([2, 0, 0, 1], [2, 1, 0, 0]));
    let tw = sparse_two_letter(([1, 0, 1, 0], [-1, 0, 0, 1]), ([2, 0, 0, 1], [2, 0, 1, 0]));
    (w, tw)
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UPoly(pub Vec<Rat>);

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> UPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn monomial(c: Rat, e: usize) -> UPoly {
        let mut v = vec![Rat::zero(); e + 1];
        v[e] = c;
        UPoly::new(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = Rat::zero();
        UPoly::new((0..n).map(|i| self.0.get(i).unwrap_or(&z) + o.0.get(i).unwrap_or(&z)).collect())
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &UPoly) -> UPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        if self.is_zero() || o.is_zero() {
            return UPoly(vec![]);
        }
        let mut c = vec![Rat::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, k: &Rat) -> UPoly {
        UPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let c = r.lead() / d.lead();
            let shift = r.degree() - d.degree();
            r = r.sub(&UPoly::monomial(c, shift).mul(d));
        }
        r
    }

    pub fn quo(&self, d: &UPoly) -> UPoly {
        let mut r = self.clone();
        let mut q = UPoly(vec![]);
        while !r.is_zero() && r.degree() >= d.degree() {
            let t = UPoly::monomial(r.lead() / d.lead(), r.degree() - d.degree());
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        q
    }

    pub fn monic(&self) -> UPoly {
        let l = self.lead().recip();
        self.scale(&l)
    }

    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }
}

/// Reduced quotient of univariate polynomials with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct UFrac {
    pub num: UPoly,
    pub den: UPoly,
}

impl UFrac {
    pub fn new(num: UPoly, den: UPoly) -> UFrac {
        if num.is_zero() {
            return UFrac { num, den: UPoly::new(vec![Rat::one()]) };
        }
        let g = num.gcd(&den);
        let (num, den) = (num.quo(&g), den.quo(&g));
        let l = den.lead().recip();
        UFrac { num: num.scale(&l), den: den.scale(&l) }
    }

    /// `c q^e` for any integer `e`.
    pub fn laurent(c: Rat, e: i32) -> UFrac {
        if e >= 0 {
            UFrac::new(UPoly::monomial(c, e as usize), UPoly::new(vec![Rat::one()]))
        } else {
            UFrac::new(UPoly::new(vec![c]), UPoly::monomial(Rat::one(), (-e) as usize))
        }
    }

    pub fn add(&self, o: &UFrac) -> UFrac {
        UFrac::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn sub(&self, o: &UFrac) -> UFrac {
        UFrac::new(self.num.mul(&o.den).sub(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }

    pub fn mul(&self, o: &UFrac) -> UFrac {
        UFrac::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }

    pub fn div(&self, o: &UFrac) -> Option<UFrac> {
        (!o.num.is_zero()).then(|| UFrac::new(self.num.mul(&o.den), self.den.mul(&o.num)))
    }

    pub fn neg(&self) -> UFrac {
        UFrac { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

/// A random rational function of q built from Laurent monomials, returned
/// both as a lazy expression and as an oracle fraction.
pub fn random_q_expr(rng: &mut impl Rng, depth: u32) -> (LazyExpr, UFrac) {
    if depth == 0 || rng.gen_range(0..4) == 0 {
        let c = nonzero_rat(rng);
        let e = rng.gen_range(-3..=3);
        return (LazyExpr::mono(Monomial::q_pow(e).scaled(&c)), UFrac::laurent(c, e));
    }
    let (a, fa) = random_q_expr(rng, depth - 1);
    let (b, fb) = random_q_expr(rng, depth - 1);
    match rng.gen_range(0..5) {
        0 => (a.add(&b), fa.add(&fb)),
        1 => (a.sub(&b), fa.sub(&fb)),
        2 => (a.neg(), fa.neg()),
        3 => match fa.div(&fb) {
            Some(f) => (a.div(&b).expect("nonzero divisor"), f),
            None => (a.mul(&b), fa.mul(&fb)),
        },
        _ => (a.mul(&b), fa.mul(&fb)),
    }
}

/// `sigma_1(n)`.
pub fn sigma1(n: u64) -> i64 {
    (1..=n).filter(|&d| n.is_multiple_of(d)).sum::<u64>() as i64
}

/// Coefficient of `q^n` in `sum_{m>=1} q^(2m) / (1 - q^m)^2`, which is
/// `sum_{d | n, d >= 2} (d - 1)`.
pub fn sz2_coeff(n: u64) -> i64 {
    (2..=n).filter(|&d| n.is_multiple_of(d)).map(|d| d as i64 - 1).sum()
}

fn series_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut c = vec![0; a.len()];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
        for (j, y) in b.iter().enumerate().take(a.len() - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// `q^(e m) / (1 - q^m)^k` truncated after `q^mq`.
fn mzv_factor(e: usize, k: u32, m: usize, mq: usize) -> Vec<i128> {
    let mut s = vec![0i128; mq + 1];
    if e * m <= mq {
        s[e * m] = 1;
    }
    for _ in 0..k {
        for i in m..=mq {
            s[i] += s[i - m];
        }
    }
    s
}

fn strict_tuples(r: usize, max: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for t in strict_tuples(r - 1, max) {
        let lo = t.last().map_or(1, |&x| x + 1);
        for m in lo..=max {
            let mut u = t.clone();
            u.push(m);
            out.push(u);
        }
    }
    out
}

/// Bradley-Zhao (`sz = false`) or Schlesinger-Zudilin (`sz = true`) q-zeta
/// value by summing every tuple `0 < m_1 < ... < m_r <= mq` term by term.
/// The last entry must make each term of order at least `m_r`.
pub fn naive_mzv(ks: &[u32], mq: usize, sz: bool) -> Vec<i128> {
    let mut acc = vec![0i128; mq + 1];
    for t in strict_tuples(ks.len(), mq) {
        let mut term = vec![0i128; mq + 1];
        term[0] = 1;
        for (&k, &m) in ks.iter().zip(&t) {
            let e = if sz { k as usize } else { k as usize - 1 };
            term = series_mul(&term, &mzv_factor(e, k, m, mq));
        }
        for (a, b) in acc.iter_mut().zip(&term) {
            *a += b;
        }
    }
    acc
}

pub fn rats(v: &[i128]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

/// Admissible words of length `0..=k_max` avoiding `e_BC`.
pub fn bc_free_words(k_max: usize) -> Vec<Word6> {
    (0..=k_max)
        .flat_map(Word6::enumerate_admissible)
        .filter(|w| !w.letters().contains(&Letter6::BC))
        .collect()
}

fn grid_equal(a: &LazyExpr, b: &LazyExpr) -> bool {
    values_equal(a, b, Mode::Grid, 0, 0).map(|v| v == Verdict::Equal).unwrap_or(false)
}

/// `Z_{N,q}(collapse(w)) = L_q(w)` at `B = C = infinity`, `D = 1`.
pub fn z_bridge_holds(w: &Word6, n: u32) -> bool {
    let Collapsed::Word(w3) = w.collapse() else { return false };
    let asg = Assignment::with(n, Param::Infinity, Param::Infinity, Param::Mono(Monomial::one()));
    let mut d = ExprDomain::new();
    let (Ok(a), Ok(b)) = (z_functional(&mut d, &w3, n, false), lq(&mut d, w, &asg)) else { return false };
    let v = d.finish_many(&[a, b]);
    grid_equal(&v[0], &v[1])
}

/// `L_q(tau(w)) = (-1)^k L_{q^-1}(w)` at `B = C = infinity`.
pub fn inversion_bridge_holds(w: &Word6, n: u32) -> bool {
    let asg = Assignment::bc_infinite(n);
    let mut d = ExprDomain::new();
    let (Ok(a), Ok(b)) = (lq(&mut d, &w.tau(), &asg), lq(&mut d, w, &asg)) else { return false };
    let v = d.finish_many(&[a, b]);
    let rhs = if w.len().is_multiple_of(2) { v[1].invert_q() } else { v[1].invert_q().neg() };
    grid_equal(&v[0], &rhs)
}

/// Runs both bridges over all `e_BC`-free admissible words up to `k_max`
/// and `N <= n_max`; returns the number of checks and the failures.
pub fn bridge_failures(k_max: usize, n_max: u32) -> (usize, Vec<String>) {
    let mut total = 0;
    let mut bad = Vec::new();
    for w in bc_free_words(k_max) {
        for n in 0..=n_max {
            total += 2;
            if !z_bridge_holds(&w, n) {
                bad.push(format!("z-bridge {w} N={n}"));
            }
            if !inversion_bridge_holds(&w, n) {
                bad.push(format!("inversion-bridge {w} N={n}"));
            }
        }
    }
    (total, bad)
}
