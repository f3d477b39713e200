//! Power-series realizations in Q[[q, z]]: multiple q-polylogarithms, the
//! `x = 0` iterated q-integral, `Li_q^(1)`, the BZ and SZ q-MZVs, and the
//! `A = 0` specializations of `L_q`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qint::FactorSpec;
use crate::shifts::{shift_table, shifted_pair_with, Assignment, Param};
use crate::valuedomain::{BiSeries, Monomial, Rat, Var};
use crate::words::{theta, AugIndex, LinComb, Word6};

/// Hard cap on the adaptive summation cutoff.
pub const CUTOFF_BUDGET: usize = 1 << 14;

/// Truncation orders `(M_q, M_z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orders {
    pub mq: usize,
    pub mz: usize,
}

impl Orders {
    pub fn new(mq: usize, mz: usize) -> Self {
        Orders { mq, mz }
    }

    pub fn q_only(mq: usize) -> Self {
        Orders { mq, mz: 0 }
    }

    pub fn initial_cutoff(self) -> usize {
        self.mq + self.mz + 4
    }

    fn zero(self) -> BiSeries {
        BiSeries::zero(self.mq, self.mz)
    }

    fn one(self) -> BiSeries {
        BiSeries::one(self.mq, self.mz)
    }
}

/// A series together with the cutoff at which it stabilized.
#[derive(Clone, Debug, PartialEq)]
pub struct Stabilized {
    pub series: BiSeries,
    pub cutoff: usize,
}

/// Doubles the cutoff from `ord.initial_cutoff()` until two successive
/// rounds agree.
pub fn stabilize(ord: Orders, mut f: impl FnMut(usize) -> Result<BiSeries>) -> Result<Stabilized> {
    let mut cutoff = ord.initial_cutoff();
    let mut prev = f(cutoff)?;
    loop {
        let next = cutoff * 2;
        if next > CUTOFF_BUDGET {
            return Err(Error::StabilizationFailure(cutoff));
        }
        let cur = f(next)?;
        if cur == prev {
            return Ok(Stabilized { series: cur, cutoff: next });
        }
        prev = cur;
        cutoff = next;
    }
}

/// `(coef, q-exponent, z-exponent)`.
type Term = (Rat, usize, usize);

/// Expansion of `t / (t - u)` at a chain point.
#[derive(Clone, Debug)]
enum Kern {
    Zero,
    Const(Rat),
    /// `num / (1 - den)`.
    Geo { num: Term, den: Term },
}

impl Kern {
    fn apply(&self, s: &BiSeries) -> BiSeries {
        match self {
            Kern::Zero => BiSeries::zero(s.orders().0, s.orders().1),
            Kern::Const(c) => s.scale(c),
            Kern::Geo { num, den } => s
                .mul_monomial(&num.0, num.1, num.2)
                .div_one_minus(&den.0, den.1, den.2)
                .expect("den has positive order"),
        }
    }
}

fn qz_exps(m: &Monomial) -> Result<(i32, i32)> {
    if Var::ALL.iter().any(|&v| v.is_projective() && m.exp(v) != 0) {
        return Err(Error::Invalid(format!("series parameter {m} must involve only q and z")));
    }
    Ok((m.exp(Var::Q), m.exp(Var::Z)))
}

/// `1 / (1 - r)` by the branch rule: geometric in `r` or in `1/r`, whichever
/// has positive order, or an exact constant.
fn recip_one_minus(r: &Monomial) -> Result<Kern> {
    let (e, f) = qz_exps(r)?;
    let c = r.coef.clone();
    if c.is_zero() {
        return Ok(Kern::Const(Rat::one()));
    }
    if e >= 0 && f >= 0 && (e, f) != (0, 0) {
        return Ok(Kern::Geo { num: (Rat::one(), 0, 0), den: (c, e as usize, f as usize) });
    }
    if e <= 0 && f <= 0 && (e, f) != (0, 0) {
        let ci = c.recip();
        let (e, f) = ((-e) as usize, (-f) as usize);
        return Ok(Kern::Geo { num: (-ci.clone(), e, f), den: (ci, e, f) });
    }
    if (e, f) == (0, 0) {
        if c.is_one() {
            return Err(Error::PoleDetected(format!("factor 1/(1 - {r})")));
        }
        return Ok(Kern::Const((Rat::one() - c).recip()));
    }
    Err(Error::NonconvergentSpec(format!("1/(1 - {r}) has mixed-sign order")))
}

fn kernel(t: &Monomial, u: &Param) -> Result<Kern> {
    match u {
        Param::Zero => Ok(Kern::Const(Rat::one())),
        Param::Infinity => Ok(Kern::Zero),
        Param::Mono(u) => recip_one_minus(&u.div(t).ok_or(Error::ZeroParameter)?),
    }
}

fn apply_factor(f: &FactorSpec, t: &Monomial, s: &BiSeries) -> Result<BiSeries> {
    Ok(match f {
        FactorSpec::Single(u) => kernel(t, u)?.apply(s),
        FactorSpec::Bracket(u, v) => {
            let a = kernel(t, u)?.apply(s);
            let b = kernel(t, v)?.apply(s);
            a.sub(&b)?
        }
    })
}

/// `I_q(0; f_1, ..., f_k; 1)` restricted to chains with `t_1 = q^m`, `m <= cutoff`.
pub fn iq_zero_series_at(factors: &[FactorSpec], ord: Orders, cutoff: usize) -> Result<BiSeries> {
    if factors.is_empty() {
        return Ok(ord.one());
    }
    // t_j = q^(cutoff - n_j) with 0 <= n_1 <= ... <= n_k <= cutoff
    let one = ord.one();
    let mut prefix: Vec<BiSeries> = Vec::new();
    for (j, f) in factors.iter().enumerate() {
        let mut cur: Vec<BiSeries> = Vec::with_capacity(cutoff + 1);
        for n in 0..=cutoff {
            let t = Monomial::q_pow((cutoff - n) as i32);
            let base = if j == 0 { &one } else { prefix.get(n).expect("one entry per n") };
            let mut e = apply_factor(f, &t, base)?;
            if let Some(prev) = cur.last() {
                e.add_assign(prev);
            }
            cur.push(e);
        }
        prefix = cur;
    }
    Ok(prefix.pop().expect("nonempty"))
}

/// `I_q(0; f_1, ..., f_k; 1)` with adaptive cutoff.
pub fn iq_zero_series(factors: &[FactorSpec], ord: Orders) -> Result<Stabilized> {
    stabilize(ord, |m| iq_zero_series_at(factors, ord, m))
}

/// Sum over `0 <= m_1 < ... < m_r <= cutoff` with `m_0 = 0` as the base
/// point, built layer by layer.
fn strict_chain(
    ord: Orders,
    layers: usize,
    cutoff: usize,
    mut layer: impl FnMut(usize, &[BiSeries]) -> Result<Vec<BiSeries>>,
) -> Result<BiSeries> {
    let mut e: Vec<BiSeries> = vec![ord.zero(); cutoff + 1];
    e[0] = ord.one();
    for i in 0..layers {
        e = layer(i, &e)?;
    }
    let mut acc = ord.zero();
    for s in &e {
        acc.add_assign(s);
    }
    Ok(acc)
}

/// `S(m) = sum_{m' < m} e(m')` for every m.
fn strict_prefix(e: &[BiSeries], ord: Orders) -> Vec<BiSeries> {
    let mut out = Vec::with_capacity(e.len());
    let mut acc = ord.zero();
    for s in e {
        out.push(acc.clone());
        acc.add_assign(s);
    }
    out
}

fn div_one_minus_q_pow(s: BiSeries, m: usize, times: u32) -> BiSeries {
    (0..times).fold(s, |s, _| s.div_one_minus(&Rat::one(), m, 0).expect("m >= 1"))
}

/// `zeta_q^BZ(k_1, ..., k_r)`.
pub fn zeta_bz(ks: &[u32], mq: usize) -> Result<Stabilized> {
    let ord = Orders::q_only(mq);
    stabilize(ord, |cutoff| {
        strict_chain(ord, ks.len(), cutoff, |i, prev| {
            let k = ks[i];
            let s = strict_prefix(prev, ord);
            Ok((0..=cutoff)
                .map(|m| {
                    if m == 0 {
                        return ord.zero();
                    }
                    let x = s[m].mul_monomial(&Rat::one(), (k as usize - 1) * m, 0);
                    div_one_minus_q_pow(x, m, k)
                })
                .collect())
        })
    })
}

/// `zeta_q^SZ(k_1, ..., k_r)`, entries may be 0.
pub fn zeta_sz(ks: &[u32], mq: usize) -> Result<Stabilized> {
    let ord = Orders::q_only(mq);
    stabilize(ord, |cutoff| {
        strict_chain(ord, ks.len(), cutoff, |i, prev| {
            let k = ks[i];
            let s = strict_prefix(prev, ord);
            Ok((0..=cutoff)
                .map(|m| {
                    if m == 0 {
                        return ord.zero();
                    }
                    let x = s[m].mul_monomial(&Rat::one(), k as usize * m, 0);
                    div_one_minus_q_pow(x, m, k)
                })
                .collect())
        })
    })
}

/// `Li_q^(1)(k~; z)`.
pub fn li1_aug(k: &AugIndex, ord: Orders) -> Result<Stabilized> {
    stabilize(ord, |cutoff| li1_aug_at(k, ord, cutoff))
}

pub fn li1_aug_at(k: &AugIndex, ord: Orders, cutoff: usize) -> Result<BiSeries> {
    strict_chain(ord, k.depth(), cutoff, |i, prev| {
        let (ki, mu) = k.0[i];
        let mut out = vec![ord.zero(); cutoff + 1];
        // s = sum_{m' < m} e(m'), g = sum_{m' < m} e(m') q^m' z^(m - m')
        let mut s = ord.zero();
        let mut g = ord.zero();
        for m in 0..=cutoff {
            if m > 0 {
                let base = if mu == 0 { g.clone() } else { s.sub(&g)? };
                let x = base.mul_monomial(&Rat::one(), (ki as usize - 1) * m, 0);
                out[m] = div_one_minus_q_pow(x, m, ki);
            }
            s.add_assign(&prev[m]);
            g.add_assign(&prev[m].mul_monomial(&Rat::one(), m, 0));
            g = g.mul_monomial(&Rat::one(), 0, 1);
        }
        Ok(out)
    })
}

/// `Li_{q; k_1..k_d}(z_1, ..., z_d)` with monomial arguments `c q^e z^f`,
/// `e, f >= 0`. Tails with constant arguments are summed in closed form.
pub fn li_q(ks: &[u32], zs: &[Monomial], ord: Orders) -> Result<BiSeries> {
    if ks.len() != zs.len() {
        return Err(Error::Invalid("index and argument lists differ in length".into()));
    }
    if ks.contains(&0) {
        return Err(Error::Invalid("indices must be positive".into()));
    }
    let d = ks.len();
    let mut exps = Vec::with_capacity(d);
    for z in zs {
        let (e, f) = qz_exps(z)?;
        if e < 0 || f < 0 {
            return Err(Error::NonconvergentSpec(format!("argument {z} has negative order")));
        }
        exps.push((e as usize, f as usize));
    }
    let cutoff = ord.mq.max(ord.mz);
    // tail[s]: sum over cutoff < n_{s+1} < ... < n_d of prod_{i>s} z_i^{n_i}
    let mut tail = vec![Rat::zero(); d + 1];
    tail[d] = Rat::one();
    for s in (0..d).rev() {
        if zs[s..].iter().any(|z| !z.is_constant()) {
            break;
        }
        let x: Rat = zs[s..].iter().fold(Rat::one(), |a, z| a * &z.coef);
        if x.is_one() {
            return Err(Error::NonconvergentSpec("a tail product of arguments equals 1".into()));
        }
        let mut t = tail[s + 1].clone() * &x / (Rat::one() - &x);
        let c = zs[s].coef.clone();
        // shift n_{s+1} past the cutoff: one factor c^cutoff per tail entry
        t *= num_traits::pow::pow(c, cutoff);
        tail[s] = t;
    }
    let mut acc = ord.one().scale(&tail[0]);
    let mut e: Vec<BiSeries> = vec![ord.zero(); cutoff + 1];
    e[0] = ord.one();
    for i in 0..d {
        let s = strict_prefix(&e, ord);
        let (ez, fz) = exps[i];
        let mut next = vec![ord.zero(); cutoff + 1];
        for n in 1..=cutoff {
            let c = num_traits::pow::pow(zs[i].coef.clone(), n);
            let x = s[n].mul_monomial(&c, ez * n, fz * n);
            next[n] = div_one_minus_q_pow(x, n, ks[i]);
        }
        e = next;
        if !tail[i + 1].is_zero() {
            let mut sum = ord.zero();
            for v in &e {
                sum.add_assign(v);
            }
            acc.add_assign(&sum.scale(&tail[i + 1]));
        }
    }
    Ok(acc)
}

/// The right side of the q-integral expression for `li_q`:
/// `(-1)^d I_q(0; a_1, {0}^(k_1-1), ..., a_d, {0}^(k_d-1); 1)`,
/// `a_i = 1 / (z_i ... z_d)`.
pub fn li_q_integral(ks: &[u32], zs: &[Monomial], ord: Orders) -> Result<Stabilized> {
    let d = ks.len();
    let mut factors = Vec::new();
    for i in 0..d {
        let x = zs[i..].iter().fold(Monomial::one(), |a, z| a.mul(z));
        let a = x.inv().ok_or(Error::ZeroParameter)?;
        factors.push(FactorSpec::Single(Param::Mono(a)));
        factors.extend(std::iter::repeat_n(FactorSpec::Single(Param::Zero), ks[i] as usize - 1));
    }
    let mut r = iq_zero_series(&factors, ord)?;
    if d % 2 == 1 {
        r.series = r.series.neg();
    }
    Ok(r)
}

/// Bracket factors of `L_q(w)` at `A = 0`, `D` the upper endpoint 1.
pub fn lq_zero_factors(w: &Word6, b: &Param, c: &Param, d: &Param) -> Result<Vec<FactorSpec>> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let asg = Assignment { n: 0, a: Param::Zero, b: b.clone(), c: c.clone(), d: d.clone() };
    let t = shift_table(w);
    Ok((1..=w.len())
        .map(|j| {
            let (u, v) = shifted_pair_with(&t, w, j, &asg);
            FactorSpec::Bracket(u, v)
        })
        .collect())
}

/// `L_q(w)` at `A = 0` with chains ending at 1, as a series.
pub fn lq_zero_series(w: &Word6, b: &Param, c: &Param, d: &Param, ord: Orders) -> Result<Stabilized> {
    iq_zero_series(&lq_zero_factors(w, b, c, d)?, ord)
}

fn lincomb_series(
    lc: &LinComb,
    ord: Orders,
    mut f: impl FnMut(&Word6) -> Result<Stabilized>,
) -> Result<Stabilized> {
    let mut acc = ord.zero();
    let mut cutoff = 0;
    for (w, c) in lc.terms() {
        let s = f(w)?;
        acc.add_assign(&s.series.scale(c));
        cutoff = cutoff.max(s.cutoff);
    }
    Ok(Stabilized { series: acc, cutoff })
}

/// `f(w) = L_q(w)` at `A = 0`, `B = C = infinity`, `D = 1`.
pub fn f_series(w: &Word6, mq: usize) -> Result<Stabilized> {
    lq_zero_series(w, &Param::Infinity, &Param::Infinity, &Param::Mono(Monomial::one()), Orders::q_only(mq))
}

pub fn f_series_lincomb(lc: &LinComb, mq: usize) -> Result<Stabilized> {
    lincomb_series(lc, Orders::q_only(mq), |w| f_series(w, mq))
}

/// `L_q(theta(w(k~)))` at `A = 0`, `B = infinity`, `C = z^-1 q^-k`, `D = 1`.
pub fn li1_word_form(k: &AugIndex, ord: Orders) -> Result<Stabilized> {
    let mut c = Monomial::q_pow(-(k.weight() as i32));
    c.exps[Var::Z.index()] = -1;
    let (b, c, d) = (Param::Infinity, Param::Mono(c), Param::Mono(Monomial::one()));
    lincomb_series(&theta(&k.to_word()), ord, |w| lq_zero_series(w, &b, &c, &d, ord))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::valuedomain::{int, rat};

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn bz_and_sz_spot_values() {
        assert_eq!(zeta_bz(&[2], 6).unwrap().series.q_coeffs(), ints(&[0, 1, 3, 4, 7, 6, 12]));
        assert_eq!(zeta_sz(&[2], 4).unwrap().series.q_coeffs(), ints(&[0, 0, 1, 2, 4]));
        assert_eq!(zeta_bz(&[], 3).unwrap().series.q_coeffs(), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn bz_divergent_tail_fails() {
        assert!(matches!(zeta_bz(&[1], 4), Err(Error::StabilizationFailure(_))));
    }

    #[test]
    fn li_q_depth_one() {
        let q = Monomial::q_pow(1);
        let s = li_q(&[2], &[q], Orders::q_only(6)).unwrap();
        assert_eq!(s.q_coeffs(), ints(&[0, 1, 3, 4, 7, 6, 12]));
        assert_eq!(li_q(&[], &[], Orders::q_only(2)).unwrap().q_coeffs(), ints(&[1, 0, 0]));
        assert!(matches!(li_q(&[1], &[Monomial::one()], Orders::q_only(2)), Err(Error::NonconvergentSpec(_))));
        // sum_n c^n / (1 - q^n) at q^0 is c / (1 - c)
        let s = li_q(&[1], &[Monomial::constant(rat(1, 2))], Orders::q_only(0)).unwrap();
        assert_eq!(s.q_coeffs(), vec![int(1)]);
    }

    #[test]
    fn li_q_matches_integral_depth_one() {
        let z = Monomial::var(Var::Z);
        let ord = Orders::new(4, 4);
        let lhs = li_q(&[1], std::slice::from_ref(&z), ord).unwrap();
        let rhs = li_q_integral(&[1], &[z], ord).unwrap().series;
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_series_bd_ab_is_zeta_bz_2() {
        let w = Word6::parse("BD.AB").unwrap();
        assert_eq!(f_series(&w, 12).unwrap().series, zeta_bz(&[2], 12).unwrap().series);
        assert_eq!(f_series(&Word6::empty(), 3).unwrap().series.q_coeffs(), ints(&[1, 0, 0, 0]));
    }

    #[test]
    fn word_form_small() {
        let k = AugIndex::new(&[(2, 1)]);
        let ord = Orders::new(8, 4);
        assert_eq!(li1_word_form(&k, ord).unwrap().series, li1_aug(&k, ord).unwrap().series);
        let k = AugIndex::new(&[(1, 0)]);
        assert_eq!(li1_word_form(&k, ord).unwrap().series, li1_aug(&k, ord).unwrap().series);
    }

    #[test]
    fn li1_specializes_to_bz() {
        let k = AugIndex::new(&[(1, 1), (2, 1)]);
        let s = li1_aug(&k, Orders::new(10, 0)).unwrap().series;
        assert_eq!(s, zeta_bz(&[1, 2], 10).unwrap().series);
    }
}
