//! Suites for the proved special cases and the series identities.

use crate::error::{Error, Result};
use crate::qint::{
    f_kl, g_klmn, lq, lq_a_eq_d_product, omega, omega_prime, phi, r_n, z_functional, Domain, ExprDomain,
};
use crate::qseries::{
    f_series, iq_zero_series_at, li1_aug, li_q, li_q_integral, li1_word_form, lq_zero_factors, zeta_bz, zeta_sz, Orders,
    Stabilized,
};
use crate::shifts::{Assignment, Param};
use crate::valuedomain::{parity_class, rat, LazyExpr, Monomial};
use crate::words::{compositions, AugIndex, Letter6, Word3, Word6};

use super::{admissible_up_to, compare_exprs, compare_series, run_cases, tau_representatives, Case, CaseVerdict, Kind, Report, Settings};

fn error_case(case: Case, e: &Error) -> Case {
    case.with(CaseVerdict::Error, None, Some(e.to_string()))
}

/// Builds two expressions in one arena and compares them.
fn expr_case(case: Case, settings: &Settings, build: impl FnOnce(&mut ExprDomain) -> Result<(u32, u32)>) -> Case {
    let mut dom = ExprDomain::new();
    match build(&mut dom) {
        Ok((a, b)) => {
            let v = dom.finish_many(&[a, b]);
            let (verdict, wit, note) = compare_exprs(&v[0], &v[1], settings);
            case.with(verdict, wit, note)
        }
        Err(e) => error_case(case, &e),
    }
}

fn series_case(case: Case, lhs: Result<Stabilized>, rhs: Result<Stabilized>) -> Case {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => {
            let (v, w) = compare_series(&a.series, &b.series);
            case.with(v, w, None)
        }
        (Err(e), _) | (_, Err(e)) => error_case(case, &e),
    }
}

/// `AD = BC q^m(w)`: duality with `C = q^(N - m) D^2 / B`.
pub fn suite_41(k_max: usize, n_max: u32, settings: &Settings) -> Report {
    let items: Vec<(Word6, u32)> =
        tau_representatives(k_max).into_iter().flat_map(|w| (0..=n_max).map(move |n| (w.clone(), n))).collect();
    let cases = run_cases(&items, settings, |(w, n)| {
        let case = Case::new("ad-eq-bcq^m", w, w.tau(), Some(*n), Kind::Proved);
        let asg = Assignment::ad_eq_bc(*n, w.m());
        expr_case(case, settings, |d| Ok((lq(d, w, &asg)?, lq(d, &w.tau(), &asg)?)))
    });
    Report::new("s41", settings.report_config(&[("k_max", k_max as u64), ("n_max", n_max as u64)]), cases)
}

#[derive(Clone, Copy, Debug)]
pub struct Params42 {
    /// Parity of `f_{k,l}(N)` for `k, l >= 1`, `k + l <= kl_max`.
    pub kl_max: usize,
    pub n_max: u32,
    /// Z-duality for words in h0 up to this length.
    pub word_len_max: usize,
    /// Recursion arguments range over `1..=rec_max` (k, l from 0 where allowed).
    pub rec_max: usize,
}

impl Default for Params42 {
    fn default() -> Self {
        Params42 { kl_max: 6, n_max: 5, word_len_max: 4, rec_max: 3 }
    }
}

enum Item42 {
    Parity(usize, usize, u32),
    ZDuality(Word3, u32),
    Rec(u8, [usize; 4], u32),
}

fn recursion_sides(d: &mut ExprDomain, which: u8, [k, l, m, n]: [usize; 4], big_n: u32) -> Result<(u32, u32)> {
    let (mi, ni, nn) = (m as i32, n as i32, big_n as i32);
    let g = g_klmn(d, k, l, mi, ni, big_n)?;
    let (shifted, rhs) = match which {
        2 => {
            let s = g_klmn(d, k, l, mi, ni + 1, big_n - 1)?;
            let r = r_n(d, -mi - nn)?;
            let g1 = g_klmn(d, k - 1, l, mi, ni, big_n)?;
            (s, d.mul(&r, &g1))
        }
        3 => {
            let s = g_klmn(d, k, l, mi + 1, ni + 1, big_n - 1)?;
            let r1 = r_n(d, -mi - ni - nn)?;
            let g1 = g_klmn(d, k - 1, l, mi, ni, big_n)?;
            let r2 = r_n(d, mi + ni + nn)?;
            let g2 = g_klmn(d, k, l - 1, mi, ni, big_n)?;
            let a = d.mul(&r1, &g1);
            let b = d.mul(&r2, &g2);
            (s, d.add(&a, &b))
        }
        _ => {
            let s = g_klmn(d, k, l, mi + 1, ni, big_n - 1)?;
            let r = r_n(d, ni + nn)?;
            let g1 = g_klmn(d, k, l - 1, mi, ni, big_n)?;
            (s, d.mul(&r, &g1))
        }
    };
    Ok((d.sub(&g, &shifted), rhs))
}

/// `B = C = infinity`: parity of `f_{k,l}(N)`, Z-duality and the three
/// q-difference recursions for `g_{k,l,m,n}(N)`.
pub fn suite_42(p: Params42, settings: &Settings) -> Report {
    let mut items = Vec::new();
    for k in 1..p.kl_max {
        for l in 1..=p.kl_max - k {
            for n in 0..=p.n_max {
                items.push(Item42::Parity(k, l, n));
            }
        }
    }
    for len in 0..=p.word_len_max {
        for w in Word3::enumerate_h0(len) {
            for n in 0..=p.n_max {
                items.push(Item42::ZDuality(w.clone(), n));
            }
        }
    }
    let r = p.rec_max;
    for k in 0..=r {
        for l in 0..=r {
            for m in 1..=r {
                for n in 1..=r {
                    for big_n in 1..=r as u32 {
                        if k >= 1 {
                            items.push(Item42::Rec(2, [k, l, m, n], big_n));
                        }
                        if k >= 1 && l >= 1 {
                            items.push(Item42::Rec(3, [k, l, m, n], big_n));
                        }
                        if l >= 1 {
                            items.push(Item42::Rec(4, [k, l, m, n], big_n));
                        }
                    }
                }
            }
        }
    }
    let cases = run_cases(&items, settings, |it| match it {
        Item42::Parity(k, l, n) => {
            let case = Case::new("f-parity", format!("f_{{{k},{l}}}"), format!("parity {}", k + l), Some(*n), Kind::Proved);
            let mut d = ExprDomain::new();
            let res = f_kl(&mut d, *k, *l, *n).and_then(|f| parity_class(&d.finish(f), (k + l) as i64));
            match res {
                Ok(true) => case.with(CaseVerdict::Equal, None, None),
                Ok(false) => case.with(CaseVerdict::NotEqual, None, None),
                Err(e) => error_case(case, &e),
            }
        }
        Item42::ZDuality(w, n) => {
            let case = Case::new("z-duality", w, format!("(-1)^{}", w.len()), Some(*n), Kind::Conjectural);
            expr_case(case, settings, |d| {
                let a = z_functional(d, w, *n, true)?;
                let b = z_functional(d, w, *n, false)?;
                Ok((a, if w.len() % 2 == 0 { b } else { d.neg(&b) }))
            })
        }
        Item42::Rec(which, args, big_n) => {
            let [k, l, m, n] = args;
            let case = Case::new(
                &format!("g-recursion-{which}"),
                format!("g_{{{k},{l},{m},{n}}}"),
                "",
                Some(*big_n),
                Kind::Proved,
            );
            expr_case(case, settings, |d| recursion_sides(d, *which, *args, *big_n))
        }
    });
    let budgets = [
        ("kl_max", p.kl_max as u64),
        ("n_max", p.n_max as u64),
        ("word_len_max", p.word_len_max as u64),
        ("rec_max", p.rec_max as u64),
    ];
    Report::new("s42", settings.report_config(&budgets), cases)
}

/// Positions of `AD` in `w` with the three words of the erasure identity.
fn erase_ad(w: &Word6) -> Vec<(usize, [Word6; 3])> {
    let l = w.letters();
    (0..l.len())
        .filter(|&i| l[i] == Letter6::AD)
        .map(|i| {
            let with = |x: Option<Letter6>| {
                let mut v = l[..i].to_vec();
                v.extend(x);
                v.extend_from_slice(&l[i + 1..]);
                Word6(v)
            };
            (i, [with(Some(Letter6::AB)), with(Some(Letter6::BD)), with(None)])
        })
        .collect()
}

/// `A = 0`, `B = C = infinity`, `D = 1`: series duality, the AD-erasure
/// identity and a cutoff-doubling check.
pub fn suite_43(k_max: usize, mq: usize, settings: &Settings) -> Report {
    enum It {
        Dual(Word6),
        Erase(Word6, usize, [Word6; 3]),
    }
    let mut items: Vec<It> = tau_representatives(k_max).into_iter().map(It::Dual).collect();
    for w in admissible_up_to(k_max) {
        for (i, parts) in erase_ad(&w) {
            items.push(It::Erase(w.clone(), i, parts));
        }
    }
    let cases = run_cases(&items, settings, |it| match it {
        It::Dual(w) => {
            let case = Case::new("f-duality", w, w.tau(), None, Kind::Proved);
            let a = f_series(w, mq);
            let b = f_series(&w.tau(), mq);
            // one more doubling must not move the stabilized coefficients
            let note = a.as_ref().ok().and_then(|s| {
                let f = lq_zero_factors(w, &Param::Infinity, &Param::Infinity, &Param::Mono(Monomial::one())).ok()?;
                let again = iq_zero_series_at(&f, Orders::q_only(mq), s.cutoff * 2).ok()?;
                Some(if again == s.series {
                    format!("stable at cutoff {}", s.cutoff)
                } else {
                    format!("UNSTABLE beyond cutoff {}", s.cutoff)
                })
            });
            let unstable = note.as_deref().is_some_and(|n| n.starts_with("UNSTABLE"));
            let mut c = series_case(case, a, b);
            if unstable {
                c.verdict = CaseVerdict::NotEqual;
            }
            c.note = note;
            c
        }
        It::Erase(w, i, [ab, bd, none]) => {
            let case = Case::new("erase-ad", w, format!("{ab} + {bd} + {none}"), None, Kind::Proved).with(
                CaseVerdict::Skipped,
                None,
                Some(format!("position {}", i + 1)),
            );
            let rhs = (|| -> Result<Stabilized> {
                let parts = [f_series(ab, mq)?, f_series(bd, mq)?, f_series(none, mq)?];
                let mut acc = parts[0].series.add(&parts[1].series)?;
                acc = acc.add(&parts[2].series)?;
                Ok(Stabilized { series: acc, cutoff: parts.iter().map(|p| p.cutoff).max().unwrap_or(0) })
            })();
            let note = case.note.clone();
            let mut c = series_case(case, f_series(w, mq), rhs);
            c.note = c.note.or(note);
            c
        }
    });
    Report::new("s43", settings.report_config(&[("k_max", k_max as u64), ("mq", mq as u64)]), cases)
}

fn product_telescopes(d: &mut ExprDomain, w: &Word6) -> Result<Vec<(u32, u32)>> {
    let k = w.len();
    let mut out = Vec::new();
    for j in 1..=k {
        let pj = phi(d, w, j)?;
        let op = omega_prime(d, w, k + 1 - j)?;
        let pj1 = phi(d, w, j - 1)?;
        let o = omega(d, w, j)?;
        out.push((d.mul(&pj, &op), d.mul(&pj1, &o)));
    }
    Ok(out)
}

/// `A = D`: duality, the product formula and the `Phi` telescoping.
pub fn suite_44(k_max: usize, settings: &Settings) -> Report {
    enum It {
        Dual(Word6),
        Product(Word6),
        Telescope(Word6),
        Final(Word6),
    }
    let mut items: Vec<It> = tau_representatives(k_max).into_iter().map(It::Dual).collect();
    for w in admissible_up_to(k_max) {
        items.push(It::Product(w.clone()));
        if !w.is_empty() {
            items.push(It::Telescope(w.clone()));
        }
        items.push(It::Final(w));
    }
    let asg = Assignment::a_eq_d();
    let cases = run_cases(&items, settings, |it| match it {
        It::Dual(w) => {
            let case = Case::new("a-eq-d", w, w.tau(), Some(0), Kind::Proved);
            expr_case(case, settings, |d| Ok((lq(d, w, &asg)?, lq(d, &w.tau(), &asg)?)))
        }
        It::Product(w) => {
            let case = Case::new("omega-product", w, "prod omega_j", Some(0), Kind::Proved);
            expr_case(case, settings, |d| Ok((lq(d, w, &asg)?, lq_a_eq_d_product(d, w)?)))
        }
        It::Final(w) => {
            let case = Case::new("phi-final", w, "1", Some(0), Kind::Proved);
            expr_case(case, settings, |d| Ok((phi(d, w, w.len())?, d.one())))
        }
        It::Telescope(w) => {
            let case = Case::new("phi-ratio", w, w.tau(), Some(0), Kind::Proved);
            let mut d = ExprDomain::new();
            let pairs = match product_telescopes(&mut d, w) {
                Ok(p) => p,
                Err(e) => return error_case(case, &e),
            };
            let roots: Vec<u32> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            let exprs: Vec<LazyExpr> = d.finish_many(&roots);
            for (j, pair) in exprs.chunks(2).enumerate() {
                let (v, wit, note) = compare_exprs(&pair[0], &pair[1], settings);
                if !matches!(v, CaseVerdict::Equal | CaseVerdict::ProbablyEqual) {
                    return case.clone().with(v, wit, Some(format!("j = {}: {}", j + 1, note.unwrap_or_default())));
                }
            }
            case.with(CaseVerdict::Equal, None, None)
        }
    });
    Report::new("s44", settings.report_config(&[("k_max", k_max as u64)]), cases)
}

#[derive(Clone, Copy, Debug)]
pub struct ParamsSection3 {
    /// Augmented indices up to this weight.
    pub weight_max: u32,
    pub orders: Orders,
    /// Indices for the q-integral expression of `Li_q`.
    pub li_weight_max: u32,
    pub li_mq: usize,
    /// Compositions for the BZ and SZ dualities.
    pub zeta_weight_max: u32,
    pub zeta_mq: usize,
}

impl Default for ParamsSection3 {
    fn default() -> Self {
        ParamsSection3 {
            weight_max: 4,
            orders: Orders::new(20, 8),
            li_weight_max: 4,
            li_mq: 15,
            zeta_weight_max: 5,
            zeta_mq: 30,
        }
    }
}

/// `(k_j, l_j)` pair lists of total weight at most `w`.
pub fn duality_pairs(w: u32) -> Vec<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for total in 2..=w {
        for c in compositions(total) {
            if c.len() % 2 == 0 {
                out.push(c.chunks(2).map(|p| (p[0], p[1])).collect());
            }
        }
    }
    out
}

/// BZ sides: `({1}^(l_1-1), k_1+1, ...)` and `({1}^(k_r-1), l_r+1, ...)`.
pub fn bz_dual_indices(pairs: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    let side = |ps: &mut dyn Iterator<Item = (u32, u32)>| {
        let mut v = Vec::new();
        for (k, l) in ps {
            v.extend(std::iter::repeat_n(1, l as usize - 1));
            v.push(k + 1);
        }
        v
    };
    (side(&mut pairs.iter().copied()), side(&mut pairs.iter().rev().map(|&(k, l)| (l, k))))
}

/// SZ sides: `({0}^(l_1-1), k_1, ...)` and `({0}^(k_r-1), l_r, ...)`.
pub fn sz_dual_indices(pairs: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    let side = |ps: &mut dyn Iterator<Item = (u32, u32)>| {
        let mut v = Vec::new();
        for (k, l) in ps {
            v.extend(std::iter::repeat_n(0, l as usize - 1));
            v.push(k);
        }
        v
    };
    (side(&mut pairs.iter().copied()), side(&mut pairs.iter().rev().map(|&(k, l)| (l, k))))
}

/// Rational arguments used for the q-integral expression of `Li_q`.
pub fn li_arguments() -> Vec<Monomial> {
    [rat(1, 2), rat(1, 3), rat(2, 1)].into_iter().map(Monomial::constant).collect()
}

fn fmt_index(v: &[u32]) -> String {
    format!("({})", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
}

/// Yamamoto duality, the bridge to `L_q`, the q-integral expression of
/// `Li_q`, and the BZ and SZ dualities.
pub fn suite_section3(p: ParamsSection3, settings: &Settings) -> Report {
    enum It {
        Yam(AugIndex),
        Bridge(AugIndex),
        Li(Vec<u32>, Vec<Monomial>),
        Bz(Vec<(u32, u32)>),
        Sz(Vec<(u32, u32)>),
    }
    let mut items = Vec::new();
    for w in 1..=p.weight_max {
        for k in AugIndex::all_of_weight(w).into_iter().filter(AugIndex::is_admissible) {
            items.push(It::Yam(k.clone()));
            items.push(It::Bridge(k));
        }
    }
    let args = li_arguments();
    for w in 1..=p.li_weight_max {
        for ks in compositions(w) {
            let mut zss: Vec<Vec<Monomial>> = vec![vec![]];
            for _ in 0..ks.len() {
                zss = zss.into_iter().flat_map(|z| args.iter().map(move |a| [z.clone(), vec![a.clone()]].concat())).collect();
            }
            items.extend(zss.into_iter().map(|zs| It::Li(ks.clone(), zs)));
        }
    }
    for pairs in duality_pairs(p.zeta_weight_max) {
        items.push(It::Bz(pairs.clone()));
        items.push(It::Sz(pairs));
    }
    let ord = p.orders;
    let cases = run_cases(&items, settings, |it| match it {
        It::Yam(k) => {
            let dual = k.dual().expect("admissible");
            let case = Case::new("yamamoto-duality", k, &dual, None, Kind::Proved);
            series_case(case, li1_aug(k, ord), li1_aug(&dual, ord))
        }
        It::Bridge(k) => {
            let case = Case::new("lq-li1-bridge", k, "Li_q^(1)", None, Kind::Proved);
            series_case(case, li1_word_form(k, ord), li1_aug(k, ord))
        }
        It::Li(ks, zs) => {
            let z: Vec<String> = zs.iter().map(|m| m.to_string()).collect();
            let case =
                Case::new("li-q-integral", format!("{} at ({})", fmt_index(ks), z.join(",")), "I_q(0;...;1)", None, Kind::Proved);
            let o = Orders::q_only(p.li_mq);
            let lhs = li_q(ks, zs, o);
            match lhs {
                Err(Error::NonconvergentSpec(m)) | Err(Error::PoleDetected(m)) => case.with(CaseVerdict::Skipped, None, Some(m)),
                lhs => series_case(
                    case,
                    lhs.map(|series| Stabilized { series, cutoff: 0 }),
                    li_q_integral(ks, zs, o),
                ),
            }
        }
        It::Bz(pairs) => {
            let (a, b) = bz_dual_indices(pairs);
            let case = Case::new("bz-duality", fmt_index(&a), fmt_index(&b), None, Kind::Proved);
            series_case(case, zeta_bz(&a, p.zeta_mq), zeta_bz(&b, p.zeta_mq))
        }
        It::Sz(pairs) => {
            let (a, b) = sz_dual_indices(pairs);
            let case = Case::new("sz-duality", fmt_index(&a), fmt_index(&b), None, Kind::Proved);
            series_case(case, zeta_sz(&a, p.zeta_mq), zeta_sz(&b, p.zeta_mq))
        }
    });
    let budgets = [
        ("weight_max", p.weight_max as u64),
        ("mq", ord.mq as u64),
        ("mz", ord.mz as u64),
        ("li_weight_max", p.li_weight_max as u64),
        ("li_mq", p.li_mq as u64),
        ("zeta_weight_max", p.zeta_weight_max as u64),
        ("zeta_mq", p.zeta_mq as u64),
    ];
    Report::new("section3", settings.report_config(&budgets), cases)
}
