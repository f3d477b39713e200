//! Verification harness: the generic duality sweep, the suites for the
//! proved special cases, the series identity suite and the classical check.

mod classical;
mod report;
mod suites;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

pub use classical::{
    classical_limit_check, classical_suite, nested_integral, suite_limit_tolerance, ClassicalCheck, DUALITY_TOLERANCE,
    LIMIT_TOLERANCE,
};
pub use report::{Case, CaseVerdict, Kind, Outcome, Report, ReportConfig, Summary};
pub use suites::{suite_41, suite_42, suite_43, suite_44, suite_section3, Params42, ParamsSection3};

use crate::error::{Error, Result};
use crate::qint::lq_dual_pair;
use crate::shifts::Assignment;
use crate::valuedomain::{rat_to_string, values_equal_with, BiSeries, EqualityConfig, LazyExpr, Mode, Witness};
use crate::words::Word6;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "QDUAL_THREADS";

#[derive(Clone, Debug)]
pub struct Settings {
    pub eq: EqualityConfig,
    /// Record wall time per case; off gives byte-reproducible reports.
    pub timings: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { eq: EqualityConfig::default(), timings: true }
    }
}

impl Settings {
    pub fn with_mode(mode: Mode) -> Settings {
        let mut s = Settings::default();
        s.eq.mode = mode;
        s
    }

    pub fn report_config(&self, budgets: &[(&str, u64)]) -> ReportConfig {
        ReportConfig {
            mode: self.eq.mode,
            seed: self.eq.seed,
            prime: self.eq.prime,
            budgets: budgets.iter().map(|(k, v)| (k.to_string(), *v)).collect::<BTreeMap<_, _>>(),
        }
    }
}

/// Runs `f` on a pool sized by `QDUAL_THREADS`, or on the global pool.
pub fn with_threads<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let n = std::env::var(THREADS_ENV).ok().and_then(|s| s.parse::<usize>().ok()).filter(|&n| n > 0);
    match n.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

/// Evaluates cases in parallel, keeping input order.
pub(crate) fn run_cases<T: Sync>(items: &[T], settings: &Settings, f: impl Fn(&T) -> Case + Sync) -> Vec<Case> {
    with_threads(|| {
        items
            .par_iter()
            .map(|it| {
                let t = Instant::now();
                let mut c = f(it);
                if settings.timings {
                    c.ms = Some(t.elapsed().as_millis() as u64);
                }
                c
            })
            .collect()
    })
}

/// Verdict for an expression pair; grid overflow falls back to modp.
pub fn compare_exprs(lhs: &LazyExpr, rhs: &LazyExpr, settings: &Settings) -> (CaseVerdict, Option<Witness>, Option<String>) {
    use crate::valuedomain::Verdict;
    let run = |cfg: &EqualityConfig| values_equal_with(lhs, rhs, cfg);
    let (res, note) = match run(&settings.eq) {
        Err(Error::GridTooLarge { points, .. }) => {
            let cfg = EqualityConfig { mode: Mode::Modp, ..settings.eq.clone() };
            (run(&cfg), Some(format!("grid of {points} points over budget; modp fallback")))
        }
        r => (r, None),
    };
    match res {
        Ok(Verdict::Equal) => (CaseVerdict::Equal, None, note),
        Ok(Verdict::ProbablyEqual) => (CaseVerdict::ProbablyEqual, None, note),
        Ok(Verdict::NotEqual(w)) => (CaseVerdict::NotEqual, Some(w), note),
        Err(e) => (CaseVerdict::Error, None, Some(e.to_string())),
    }
}

/// Exact coefficientwise comparison; the witness names the first differing
/// coefficient.
pub fn compare_series(lhs: &BiSeries, rhs: &BiSeries) -> (CaseVerdict, Option<Witness>) {
    if lhs == rhs {
        return (CaseVerdict::Equal, None);
    }
    if lhs.orders() != rhs.orders() {
        let w = Witness {
            point: BTreeMap::new(),
            modulus: None,
            lhs: format!("orders {:?}", lhs.orders()),
            rhs: format!("orders {:?}", rhs.orders()),
        };
        return (CaseVerdict::NotEqual, Some(w));
    }
    let (mq, mz) = lhs.orders();
    for i in 0..=mq {
        for j in 0..=mz {
            if lhs.get(i, j) != rhs.get(i, j) {
                let point = BTreeMap::from([("q^".to_string(), i.to_string()), ("z^".to_string(), j.to_string())]);
                let w = Witness {
                    point,
                    modulus: None,
                    lhs: rat_to_string(lhs.get(i, j)),
                    rhs: rat_to_string(rhs.get(i, j)),
                };
                return (CaseVerdict::NotEqual, Some(w));
            }
        }
    }
    unreachable!("series differ but no coefficient does")
}

fn duality_case(w: &Word6, n: u32, settings: &Settings) -> Case {
    let dual = w.tau();
    let case = Case::new("duality", w, &dual, Some(n), Kind::Conjectural);
    match lq_dual_pair(w, &Assignment::generic(n)) {
        Ok((a, b)) => {
            let (v, wit, note) = compare_exprs(&a, &b, settings);
            case.with(v, wit, note)
        }
        Err(e) => case.with(CaseVerdict::Error, None, Some(e.to_string())),
    }
}

/// `L_q(w) = L_q(tau(w))` at generic B, C, D and `A = q^N D`.
pub fn verify_main(w: &Word6, n: u32, settings: &Settings) -> Result<Report> {
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    let cases = run_cases(std::slice::from_ref(w), settings, |w| duality_case(w, n, settings));
    Ok(Report::new("verify", settings.report_config(&[("n", n as u64)]), cases))
}

/// Admissible words of length at most `k_max`, one per tau-orbit.
pub fn tau_representatives(k_max: usize) -> Vec<Word6> {
    (0..=k_max).flat_map(Word6::enumerate_admissible).filter(|w| *w <= w.tau()).collect()
}

/// All admissible words of length at most `k_max`.
pub fn admissible_up_to(k_max: usize) -> Vec<Word6> {
    (0..=k_max).flat_map(Word6::enumerate_admissible).collect()
}

/// `verify_main` over every tau-orbit of admissible words up to `k_max` and
/// every `N <= n_max`.
pub fn sweep_main(k_max: usize, n_max: u32, settings: &Settings) -> Report {
    let items: Vec<(Word6, u32)> =
        tau_representatives(k_max).into_iter().flat_map(|w| (0..=n_max).map(move |n| (w.clone(), n))).collect();
    let cases = run_cases(&items, settings, |(w, n)| duality_case(w, *n, settings));
    Report::new("sweep", settings.report_config(&[("k_max", k_max as u64), ("n_max", n_max as u64)]), cases)
}
