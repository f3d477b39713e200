//! Finite iterated q-integral sums over chains `t_j = x q^(-n_j)`,
//! `0 <= n_1 <= ... <= n_k <= N`, evaluated in any value domain.

use num_traits::One;

use crate::error::{Error, Result};
use crate::shifts::{primed_table, shift_table, shifted_pair_with, strict_table, Assignment, Param};
use crate::valuedomain::{ExprBuilder, LazyExpr, Monomial, Point, Rat, Scalar, Var};
use crate::words::{Letter3, LinComb, Mark, Word3, Word6};

/// Arithmetic target for the chain sums.
pub trait Domain {
    type V: Clone;
    fn constant(&mut self, c: &Rat) -> Self::V;
    fn mono(&mut self, m: &Monomial) -> Result<Self::V>;
    fn add(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&mut self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&mut self, a: &Self::V) -> Self::V;
    /// `1 / (1 - m)`.
    fn recip_one_minus(&mut self, m: &Monomial) -> Result<Self::V>;

    fn one(&mut self) -> Self::V {
        self.constant(&Rat::one())
    }

    fn zero(&mut self) -> Self::V {
        self.constant(&Rat::from_integer(0.into()))
    }
}

/// Builds a `LazyExpr` DAG.
#[derive(Default)]
pub struct ExprDomain {
    pub builder: ExprBuilder,
}

impl ExprDomain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn finish(self, root: u32) -> LazyExpr {
        self.builder.finish_one(root)
    }

    pub fn finish_many(self, roots: &[u32]) -> Vec<LazyExpr> {
        self.builder.finish_many(roots)
    }
}

impl Domain for ExprDomain {
    type V = u32;
    fn constant(&mut self, c: &Rat) -> u32 {
        self.builder.constant(c.clone())
    }
    fn mono(&mut self, m: &Monomial) -> Result<u32> {
        Ok(self.builder.mono(m.clone()))
    }
    fn add(&mut self, a: &u32, b: &u32) -> u32 {
        self.builder.add(*a, *b)
    }
    fn sub(&mut self, a: &u32, b: &u32) -> u32 {
        self.builder.sub(*a, *b)
    }
    fn mul(&mut self, a: &u32, b: &u32) -> u32 {
        self.builder.mul(*a, *b)
    }
    fn neg(&mut self, a: &u32) -> u32 {
        self.builder.neg(*a)
    }
    fn recip_one_minus(&mut self, m: &Monomial) -> Result<u32> {
        self.builder.recip_one_minus(m)
    }
}

/// Evaluates directly at a point of some field.
pub struct PointDomain<S: Scalar> {
    pub point: Point<S>,
    pub proto: S,
}

impl<S: Scalar> PointDomain<S> {
    pub fn new(point: Point<S>, proto: S) -> Self {
        PointDomain { point, proto }
    }

    /// Only q assigned.
    pub fn q_only(q: S) -> Self {
        let proto = q.zero_like();
        let mut point: Point<S> = Default::default();
        point[Var::Q.index()] = Some(q);
        PointDomain { point, proto }
    }
}

impl<S: Scalar> Domain for PointDomain<S> {
    type V = S;
    fn constant(&mut self, c: &Rat) -> S {
        self.proto.lift(c).expect("constant denominator invertible in the target field")
    }
    fn mono(&mut self, m: &Monomial) -> Result<S> {
        m.eval(&self.point, &self.proto)
    }
    fn add(&mut self, a: &S, b: &S) -> S {
        a.add(b)
    }
    fn sub(&mut self, a: &S, b: &S) -> S {
        a.sub(b)
    }
    fn mul(&mut self, a: &S, b: &S) -> S {
        a.mul(b)
    }
    fn neg(&mut self, a: &S) -> S {
        a.neg()
    }
    fn recip_one_minus(&mut self, m: &Monomial) -> Result<S> {
        let v = m.eval(&self.point, &self.proto)?;
        self.proto.one_like().sub(&v).inv().ok_or(Error::PoleAtPoint)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorSpec {
    /// `t / (t - u)`.
    Single(Param),
    /// `t / (t - u) - t / (t - v)`.
    Bracket(Param, Param),
}

/// `t / (t - u)` at the chain point `t`.
pub fn kernel<Dm: Domain>(dom: &mut Dm, t: &Monomial, u: &Param) -> Result<Dm::V> {
    match u {
        Param::Zero => Ok(dom.one()),
        Param::Infinity => Ok(dom.zero()),
        Param::Mono(u) => dom.recip_one_minus(&u.div(t).ok_or(Error::ZeroParameter)?),
    }
}

fn factor_value<Dm: Domain>(dom: &mut Dm, t: &Monomial, f: &FactorSpec) -> Result<Dm::V> {
    match f {
        FactorSpec::Single(u) => kernel(dom, t, u),
        FactorSpec::Bracket(u, v) => {
            let a = kernel(dom, t, u)?;
            let b = kernel(dom, t, v)?;
            Ok(dom.sub(&a, &b))
        }
    }
}

/// Sum over chains `0 <= n_1 <= ... <= n_k <= N` of `prod_j factor(j, n_j)`,
/// by prefix sums.
pub fn chain_sum<Dm: Domain>(
    dom: &mut Dm,
    k: usize,
    n: u32,
    mut factor: impl FnMut(&mut Dm, usize, u32) -> Result<Dm::V>,
) -> Result<Dm::V> {
    if k == 0 {
        return Ok(dom.one());
    }
    let mut prefix: Vec<Dm::V> = Vec::new();
    for j in 0..k {
        let mut cur: Vec<Dm::V> = Vec::with_capacity(n as usize + 1);
        for m in 0..=n {
            let f = factor(dom, j, m)?;
            let e = if j == 0 { f } else { dom.mul(&f, &prefix[m as usize]) };
            let s = match cur.last() {
                Some(prev) => dom.add(prev, &e),
                None => e,
            };
            cur.push(s);
        }
        prefix = cur;
    }
    Ok(prefix.pop().expect("n + 1 >= 1 entries"))
}

/// `I_q(x; f_1, ..., f_k; x q^(-N))`.
pub fn iq<Dm: Domain>(dom: &mut Dm, x_scale: &Monomial, factors: &[FactorSpec], n: u32) -> Result<Dm::V> {
    chain_sum(dom, factors.len(), n, |dom, j, m| factor_value(dom, &x_scale.times_q(-(m as i32)), &factors[j]))
}

/// `L_q(w)` for an admissible word.
pub fn lq<Dm: Domain>(dom: &mut Dm, w: &Word6, asg: &Assignment) -> Result<Dm::V> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let t = shift_table(w);
    let factors: Vec<FactorSpec> = (1..=w.len())
        .map(|j| {
            let (u, v) = shifted_pair_with(&t, w, j, asg);
            FactorSpec::Bracket(u, v)
        })
        .collect();
    iq(dom, &asg.x_scale()?, &factors, asg.n)
}

/// Linear extension of `L_q`.
pub fn lq_lincomb<Dm: Domain>(dom: &mut Dm, lc: &LinComb, asg: &Assignment) -> Result<Dm::V> {
    let mut acc = dom.zero();
    for (w, c) in lc.terms() {
        let v = lq(dom, w, asg)?;
        let c = dom.constant(c);
        let term = dom.mul(&c, &v);
        acc = dom.add(&acc, &term);
    }
    Ok(acc)
}

/// `L_q(w)` and `L_q(tau(w))` in one shared arena.
pub fn lq_dual_pair(w: &Word6, asg: &Assignment) -> Result<(LazyExpr, LazyExpr)> {
    let mut dom = ExprDomain::new();
    let a = lq(&mut dom, w, asg)?;
    let b = lq(&mut dom, &w.tau(), asg)?;
    let v = dom.finish_many(&[a, b]);
    Ok((v[0].clone(), v[1].clone()))
}

pub fn lq_expr(w: &Word6, asg: &Assignment) -> Result<LazyExpr> {
    let mut dom = ExprDomain::new();
    let r = lq(&mut dom, w, asg)?;
    Ok(dom.finish(r))
}

/// `R_n = 1 / (1 - q^n)`.
pub fn r_n<Dm: Domain>(dom: &mut Dm, n: i32) -> Result<Dm::V> {
    dom.recip_one_minus(&Monomial::q_pow(n))
}

/// `Z_{N,q}(w)`, or `Z_{N,q^-1}(w)` when `invert_q`.
pub fn z_functional<Dm: Domain>(dom: &mut Dm, w: &Word3, n: u32, invert_q: bool) -> Result<Dm::V> {
    if !w.in_h0() {
        return Err(Error::NotInH0(w.to_string()));
    }
    let s = if invert_q { -1 } else { 1 };
    let u = &w.0;
    let k = u.len();
    let y_le: Vec<i32> = (0..k).map(|j| u[..=j].iter().filter(|&&l| l == Letter3::Y).count() as i32).collect();
    let x_ge: Vec<i32> = (0..k).map(|j| u[j..].iter().filter(|&&l| l == Letter3::X).count() as i32).collect();
    chain_sum(dom, k, n, |dom, j, m| {
        let m = m as i32;
        let xf = |dom: &mut Dm| r_n(dom, s * (m + y_le[j]));
        let yf = |dom: &mut Dm| r_n(dom, s * (m - n as i32 - x_ge[j]));
        Ok(match u[j] {
            Letter3::X => xf(dom)?,
            Letter3::Y => {
                let v = yf(dom)?;
                dom.neg(&v)
            }
            Letter3::Z => {
                let a = xf(dom)?;
                let b = yf(dom)?;
                dom.sub(&a, &b)
            }
        })
    })
}

/// `g_{k,l,m,n}(N) = I_q(1; {q^(-N-m)}^k, {q^n}^l; q^(-N))`.
pub fn g_klmn<Dm: Domain>(dom: &mut Dm, k: usize, l: usize, m: i32, n: i32, big_n: u32) -> Result<Dm::V> {
    let mut factors = vec![FactorSpec::Single(Param::Mono(Monomial::q_pow(-(big_n as i32) - m))); k];
    factors.extend(vec![FactorSpec::Single(Param::Mono(Monomial::q_pow(n))); l]);
    iq(dom, &Monomial::one(), &factors, big_n)
}

/// `f_{k,l}(N) = g_{k,l,l,k}(N)`.
pub fn f_kl<Dm: Domain>(dom: &mut Dm, k: usize, l: usize, big_n: u32) -> Result<Dm::V> {
    g_klmn(dom, k, l, l as i32, k as i32, big_n)
}

fn mark_exp(q: &[i32; 4], m: Mark) -> i32 {
    match m {
        Mark::A => q[0],
        Mark::B => q[1],
        Mark::C => q[2],
        Mark::D => q[3],
    }
}

/// Parameter of a mark at A = D (both become the symbol D).
fn a_eq_d_param(m: Mark) -> Monomial {
    match m {
        Mark::A | Mark::D => Monomial::var(Var::D),
        Mark::B => Monomial::var(Var::B),
        Mark::C => Monomial::var(Var::C),
    }
}

fn omega_from<Dm: Domain>(dom: &mut Dm, marks: (Mark, Mark), exps: &[i32; 4]) -> Result<Dm::V> {
    let a = Monomial::var(Var::D);
    let (u, v) = marks;
    let ku = kernel(dom, &a, &Param::Mono(a_eq_d_param(u).times_q(mark_exp(exps, u))))?;
    let kv = kernel(dom, &a, &Param::Mono(a_eq_d_param(v).times_q(mark_exp(exps, v))))?;
    Ok(dom.sub(&ku, &kv))
}

/// `omega_j` (1-based) at A = D.
pub fn omega<Dm: Domain>(dom: &mut Dm, w: &Word6, j: usize) -> Result<Dm::V> {
    let t = strict_table(w);
    omega_from(dom, w.letters()[j - 1].marks(), &t[j])
}

/// `omega'_j` (1-based): the factor of `tau(w)` built from the primed table.
pub fn omega_prime<Dm: Domain>(dom: &mut Dm, w: &Word6, j: usize) -> Result<Dm::V> {
    let tw = w.tau();
    let t = primed_table(&tw);
    omega_from(dom, tw.letters()[j - 1].marks(), &t[j - 1])
}

/// `prod_j omega_j`, the A = D closed form of `L_q(w)`.
pub fn lq_a_eq_d_product<Dm: Domain>(dom: &mut Dm, w: &Word6) -> Result<Dm::V> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let mut acc = dom.one();
    for j in 1..=w.len() {
        let o = omega(dom, w, j)?;
        acc = dom.mul(&acc, &o);
    }
    Ok(acc)
}

/// `Phi(j)` for `0 <= j <= k`, with `A = D`.
pub fn phi<Dm: Domain>(dom: &mut Dm, w: &Word6, j: usize) -> Result<Dm::V> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let [a, b, c, d] = strict_table(w)[j];
    let mut acc = dom.mono(&Monomial::q_pow(a * d))?;
    // (A - X q^l) / A = 1 - (X / D) q^l
    let ratio = |x: Var, l: i32| Monomial::var(x).div(&Monomial::var(Var::D)).expect("nonzero").times_q(l);
    for (x, e) in [(Var::B, b), (Var::C, c)] {
        for l in (1 - a + e - d)..=(e - d) {
            let one = dom.one();
            let m = dom.mono(&ratio(x, l))?;
            let f = dom.sub(&one, &m);
            acc = dom.mul(&acc, &f);
        }
        for l in (1 - a + e)..=e {
            let r = dom.recip_one_minus(&ratio(x, l))?;
            acc = dom.mul(&acc, &r);
        }
    }
    Ok(acc)
}

/// The inversion `t -> x y / t`: the bracket list reversed with
/// `[u, v] -> [xy / v, xy / u]`, `xy = x^2 q^(-N)`.
pub fn inversion_transform(factors: &[(Param, Param)], x_scale: &Monomial, n: u32) -> Result<Vec<(Param, Param)>> {
    let xy = x_scale.mul(x_scale).times_q(-(n as i32));
    let inv = |p: &Param| -> Result<Param> {
        match p {
            Param::Zero => Err(Error::ZeroParameter),
            Param::Infinity => Ok(Param::Zero),
            Param::Mono(m) => Ok(Param::Mono(xy.div(m).ok_or(Error::ZeroParameter)?)),
        }
    };
    factors.iter().rev().map(|(u, v)| Ok((inv(v)?, inv(u)?))).collect()
}
