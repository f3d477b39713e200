//! Identity testing for `LazyExpr` pairs.
//!
//! Grid mode is a proof: the numerator `P` of `lhs - rhs` has certified degree
//! `num[v]` in each variable, so vanishing on a tree-shaped grid with
//! `num[v] + 1` admissible values per level forces `P = 0`. The default backend
//! runs the grid over several primes above 2^61 whose product exceeds the
//! certified coefficient height, which lifts `P = 0 mod p` to `P = 0`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::expr::{pole_degrees, ExprBuilder, FfPlan, LazyExpr, Plan};
use super::fp::{large_primes, FpElem, DEFAULT_PRIME};
use super::mono::{Point, Var, NVARS};
use super::rat::{int, Rat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Grid,
    RandomExact,
    Modp,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Grid => "grid",
            Mode::RandomExact => "random-exact",
            Mode::Modp => "modp",
        }
    }

    pub fn parse(s: &str) -> Option<Mode> {
        [Mode::Grid, Mode::RandomExact, Mode::Modp].into_iter().find(|m| m.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridBackend {
    /// Fraction-free evaluation modulo enough large primes.
    MultiModular,
    /// Exact rational evaluation at every grid point.
    Rational,
}

#[derive(Clone, Debug)]
pub struct EqualityConfig {
    pub mode: Mode,
    pub seed: u64,
    pub trials: usize,
    /// Prime for modp mode.
    pub prime: u64,
    pub grid_budget: u128,
    pub backend: GridBackend,
    /// Fix D = 1 when both sides are homogeneous of the same degree in B, C, D.
    pub dehomogenize: bool,
}

impl Default for EqualityConfig {
    fn default() -> Self {
        EqualityConfig {
            mode: Mode::Grid,
            seed: 0,
            trials: 3,
            prime: DEFAULT_PRIME,
            grid_budget: 1 << 24,
            backend: GridBackend::MultiModular,
            dehomogenize: true,
        }
    }
}

/// A point where the two sides differ, with both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub point: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    ProbablyEqual,
    NotEqual(Witness),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        !matches!(self, Verdict::NotEqual(_))
    }
}

/// Grid-run statistics alongside the verdict.
#[derive(Clone, Debug)]
pub struct GridProof {
    pub verdict: Verdict,
    pub points: u64,
    pub primes: usize,
    pub levels: Vec<(Var, u32)>,
}

pub fn values_equal(lhs: &LazyExpr, rhs: &LazyExpr, mode: Mode, seed: u64, trials: usize) -> Result<Verdict> {
    let cfg = EqualityConfig { mode, seed, trials, ..EqualityConfig::default() };
    values_equal_with(lhs, rhs, &cfg)
}

pub fn values_equal_with(lhs: &LazyExpr, rhs: &LazyExpr, cfg: &EqualityConfig) -> Result<Verdict> {
    match cfg.mode {
        Mode::Grid => grid_check(lhs, rhs, cfg).map(|g| g.verdict),
        Mode::RandomExact => random_exact(lhs, rhs, cfg),
        Mode::Modp => random_modp(lhs, rhs, cfg),
    }
}

/// True iff `F(1/q) = (-1)^s F(q)` identically; `F` must involve only q.
pub fn parity_class(f: &LazyExpr, s: i64) -> Result<bool> {
    if f.cert().vars & !1 != 0 {
        return Err(Error::Invalid("parity_class needs a function of q alone".into()));
    }
    let flipped = f.invert_q();
    let rhs = if s.rem_euclid(2) == 0 { f.clone() } else { f.neg() };
    Ok(values_equal(&flipped, &rhs, Mode::Grid, 0, 0)?.holds())
}

fn joint(lhs: &LazyExpr, rhs: &LazyExpr) -> (LazyExpr, LazyExpr, LazyExpr) {
    let mut b = ExprBuilder::from_arena(lhs.arena());
    let r = if std::sync::Arc::ptr_eq(lhs.arena(), rhs.arena()) { rhs.root() } else { b.import(rhs) };
    let d = b.sub(lhs.root(), r);
    let v = b.finish_many(&[lhs.root(), r, d]);
    (v[0].clone(), v[1].clone(), v[2].clone())
}

fn witness_from_ints(lhs: &LazyExpr, rhs: &LazyExpr, vars: u8, point: &[u64; NVARS]) -> Witness {
    let mut p: Point<Rat> = Default::default();
    let mut shown = BTreeMap::new();
    for v in Var::ALL {
        let x = int(point[v.index()] as i64);
        if vars & (1 << v.index()) != 0 {
            shown.insert(v.name().to_string(), x.show());
        }
        p[v.index()] = Some(x);
    }
    let show = |e: &LazyExpr| e.eval_rat(&p).map(|r| r.show()).unwrap_or_else(|_| "pole".into());
    Witness { point: shown, modulus: None, lhs: show(lhs), rhs: show(rhs) }
}

struct Walker<'a, F: FnMut(&[u64; NVARS]) -> Option<bool>> {
    levels: &'a [(Var, u32)],
    poles: [u32; NVARS],
    leaf: F,
    points: u64,
}

enum Walk {
    Zero,
    Degenerate,
    NonZero([u64; NVARS]),
}

impl<F: FnMut(&[u64; NVARS]) -> Option<bool>> Walker<'_, F> {
    fn walk(&mut self, level: usize, point: &mut [u64; NVARS]) -> Walk {
        if level == self.levels.len() {
            self.points += 1;
            return match (self.leaf)(point) {
                None => Walk::Degenerate,
                Some(true) => Walk::Zero,
                Some(false) => Walk::NonZero(*point),
            };
        }
        let (v, need) = self.levels[level];
        let (mut ok, mut bad) = (0u32, 0u32);
        let mut cand = 2u64;
        while ok < need {
            point[v.index()] = cand;
            cand += 1;
            match self.walk(level + 1, point) {
                Walk::Zero => ok += 1,
                Walk::Degenerate => {
                    bad += 1;
                    if bad > self.poles[v.index()] {
                        return Walk::Degenerate;
                    }
                }
                nz @ Walk::NonZero(_) => return nz,
            }
        }
        Walk::Zero
    }
}

/// Deterministic grid proof (or refutation) of `lhs = rhs`.
pub fn grid_check(lhs: &LazyExpr, rhs: &LazyExpr, cfg: &EqualityConfig) -> Result<GridProof> {
    let (lhs, rhs, diff) = joint(lhs, rhs);
    let cert = diff.cert();
    if cert.height == f64::NEG_INFINITY {
        return Ok(GridProof { verdict: Verdict::Equal, points: 0, primes: 0, levels: vec![] });
    }
    let dehom = cfg.dehomogenize && cert.hom.is_some() && cert.uses(Var::D);
    match grid_run(&lhs, &rhs, &diff, cfg, dehom) {
        Err(Error::GridDegenerate) if dehom => grid_run(&lhs, &rhs, &diff, cfg, false),
        other => other,
    }
}

fn grid_run(lhs: &LazyExpr, rhs: &LazyExpr, diff: &LazyExpr, cfg: &EqualityConfig, dehom: bool) -> Result<GridProof> {
    let cert = diff.cert();
    let levels: Vec<(Var, u32)> = Var::ALL
        .into_iter()
        .filter(|&v| cert.uses(v) && !(dehom && v == Var::D))
        .map(|v| (v, cert.num[v.index()] + 1))
        .collect();
    let total: u128 = levels.iter().map(|&(_, n)| n as u128).product();
    if total > cfg.grid_budget {
        return Err(Error::GridTooLarge { points: total, budget: cfg.grid_budget });
    }
    let poles = pole_degrees(diff.arena(), diff.root());
    let plan = Plan::new(diff.arena(), diff.root());
    let mut base = [1u64; NVARS];
    let mut points = 0;
    match cfg.backend {
        GridBackend::MultiModular => {
            let need = ((cert.height + 1.0) / 61.0).floor() as usize + 1;
            let primes = large_primes(need);
            for &p in &primes {
                let ff: FfPlan = plan.for_prime(p).ok_or(Error::GridDegenerate)?;
                let mut buf = Vec::new();
                let mut w = Walker { levels: &levels, poles, leaf: |pt: &[u64; NVARS]| ff.eval(pt, &mut buf).map(|(n, _)| n == 0), points: 0 };
                let out = w.walk(0, &mut base);
                points += w.points;
                match out {
                    Walk::Zero => {}
                    Walk::Degenerate => return Err(Error::GridDegenerate),
                    Walk::NonZero(pt) => {
                        let verdict = Verdict::NotEqual(witness_from_ints(lhs, rhs, cert.vars, &pt));
                        return Ok(GridProof { verdict, points, primes: primes.len(), levels });
                    }
                }
            }
            Ok(GridProof { verdict: Verdict::Equal, points, primes: primes.len(), levels })
        }
        GridBackend::Rational => {
            let proto = Rat::zero();
            let leaf = |pt: &[u64; NVARS]| {
                let p: Point<Rat> = std::array::from_fn(|i| Some(int(pt[i] as i64)));
                plan.eval(&p, &proto).ok().map(|v| v.is_zero())
            };
            let mut w = Walker { levels: &levels, poles, leaf, points: 0 };
            let out = w.walk(0, &mut base);
            points += w.points;
            let verdict = match out {
                Walk::Zero => Verdict::Equal,
                Walk::Degenerate => return Err(Error::GridDegenerate),
                Walk::NonZero(pt) => Verdict::NotEqual(witness_from_ints(lhs, rhs, cert.vars, &pt)),
            };
            Ok(GridProof { verdict, points, primes: 0, levels })
        }
    }
}

const MAX_RESAMPLES: usize = 200;

fn random_exact(lhs: &LazyExpr, rhs: &LazyExpr, cfg: &EqualityConfig) -> Result<Verdict> {
    let vars = lhs.cert().vars | rhs.cert().vars;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (pl, pr) = (Plan::new(lhs.arena(), lhs.root()), Plan::new(rhs.arena(), rhs.root()));
    let proto = Rat::zero();
    for _ in 0..cfg.trials {
        let mut done = false;
        for _ in 0..MAX_RESAMPLES {
            let point: Point<Rat> = std::array::from_fn(|i| {
                (vars & (1 << i) != 0).then(|| loop {
                    let n: i64 = rng.gen_range(-60..=60);
                    let d: i64 = rng.gen_range(1..=60);
                    let r = Rat::new(n.into(), d.into());
                    if !r.is_zero() && r != int(1) && r != int(-1) {
                        break r;
                    }
                })
            });
            let (Ok(a), Ok(b)) = (pl.eval(&point, &proto), pr.eval(&point, &proto)) else { continue };
            if a != b {
                let shown = Var::ALL
                    .into_iter()
                    .filter_map(|v| point[v.index()].as_ref().map(|x| (v.name().to_string(), x.show())))
                    .collect();
                return Ok(Verdict::NotEqual(Witness { point: shown, modulus: None, lhs: a.show(), rhs: b.show() }));
            }
            done = true;
            break;
        }
        if !done {
            return Err(Error::PoleAtPoint);
        }
    }
    Ok(Verdict::ProbablyEqual)
}

fn random_modp(lhs: &LazyExpr, rhs: &LazyExpr, cfg: &EqualityConfig) -> Result<Verdict> {
    let p = cfg.prime;
    let vars = lhs.cert().vars | rhs.cert().vars;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let (pl, pr) = (Plan::new(lhs.arena(), lhs.root()), Plan::new(rhs.arena(), rhs.root()));
    let proto = FpElem::new(0, p);
    for _ in 0..cfg.trials {
        let mut done = false;
        for _ in 0..MAX_RESAMPLES {
            let point: Point<FpElem> =
                std::array::from_fn(|i| (vars & (1 << i) != 0).then(|| FpElem::new(rng.gen_range(2..p - 1), p)));
            let (Ok(a), Ok(b)) = (pl.eval(&point, &proto), pr.eval(&point, &proto)) else { continue };
            if a != b {
                let shown = Var::ALL
                    .into_iter()
                    .filter_map(|v| point[v.index()].as_ref().map(|x| (v.name().to_string(), x.show())))
                    .collect();
                return Ok(Verdict::NotEqual(Witness { point: shown, modulus: Some(p), lhs: a.show(), rhs: b.show() }));
            }
            done = true;
            break;
        }
        if !done {
            return Err(Error::PoleAtPoint);
        }
    }
    Ok(Verdict::ProbablyEqual)
}
