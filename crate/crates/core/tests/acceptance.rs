//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use qdual::qint::{f_kl, z_functional, ExprDomain};
use qdual::qseries::{iq_zero_series, iq_zero_series_at, li1_aug, li1_aug_at, lq_zero_factors, zeta_bz, zeta_sz, Orders};
use qdual::shifts::Param;
use qdual::valuedomain::{int, values_equal, LazyExpr, Mode, Monomial, Rat, Verdict};
use qdual::verifier::{
    classical_limit_check, suite_41, suite_42, suite_43, suite_44, suite_section3, sweep_main, Kind, Params42,
    ParamsSection3, Report, Settings, DUALITY_TOLERANCE, LIMIT_TOLERANCE,
};
use qdual::words::{AugIndex, Word3, Word6};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn summarize(reports: &[&Report], only_proved: bool) -> Outcome {
    let mut total = 0;
    let mut failed = Vec::new();
    let mut skipped = 0;
    for r in reports {
        for c in r.cases.iter().filter(|c| !only_proved || c.kind == Kind::Proved) {
            total += 1;
            if matches!(c.verdict, qdual::verifier::CaseVerdict::Skipped) {
                skipped += 1;
            }
            if !c.passed() {
                failed.push(format!("{} {} N={:?}", c.check, c.word, c.n));
            }
        }
    }
    let mut detail = format!("{total} cases, {} failed, {skipped} skipped", failed.len());
    if let Some(f) = failed.first() {
        detail.push_str(&format!(", first failure: {f}"));
    }
    Outcome { pass: failed.is_empty() && total > 0, detail }
}

fn sweep() -> Outcome {
    let grid = sweep_main(3, 2, &Settings::with_mode(Mode::Grid));
    let mut s = Settings::with_mode(Mode::Modp);
    s.eq.trials = 3;
    let modp = sweep_main(4, 3, &s);
    let mut o = summarize(&[&grid, &modp], false);
    o.detail = format!("grid k<=3 N<=2 and modp k<=4 N<=3: {}", o.detail);
    o
}

fn proved_suites() -> Outcome {
    let s = Settings::default();
    let r41 = suite_41(3, 3, &s);
    let r42 = suite_42(Params42::default(), &s);
    let r43 = suite_43(4, 25, &s);
    let r44 = suite_44(4, &s);
    summarize(&[&r41, &r42, &r43, &r44], true)
}

fn random_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    // difference instances per branch: h = 0, 0 < h < k, h = k
    let mut branches = [0usize; 3];
    let mut diff = 0;
    while diff < 100 || branches.iter().any(|&b| b < 10) {
        let c = DiffCase::random(&mut rng, 4);
        let Some((l, r)) = c.difference_sides() else { continue };
        let b = if c.h == 0 { 0 } else if c.h < c.a.len() { 1 } else { 2 };
        branches[b] += 1;
        diff += 1;
        if l != r {
            bad.push(format!("difference {c:?}"));
        }
    }
    let mut zero_ins = 0;
    while zero_ins < 100 {
        let c = DiffCase::random(&mut rng, 3);
        let Some((l, r)) = c.zero_insertion_sides() else { continue };
        zero_ins += 1;
        if l != r {
            bad.push(format!("zero insertion {c:?}"));
        }
    }
    let mut dp = 0;
    while dp < 100 {
        use rand::Rng;
        let k = rng.gen_range(1..=3);
        let fs: Vec<F> = (0..k)
            .map(|_| if rng.gen_range(0..2) == 0 { F::One(random_param(&mut rng)) } else { F::Two(random_param(&mut rng), random_param(&mut rng)) })
            .collect();
        let (q, x, n) = (random_q(&mut rng), nonzero_rat(&mut rng), rng.gen_range(0..=3));
        let Some(want) = naive_iq(&x, &q, &fs, n) else { continue };
        dp += 1;
        if dp_iq(&x, &q, &fs, n) != Some(want) {
            bad.push(format!("dp {fs:?} N={n}"));
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "difference identity {diff} (branches {branches:?}), zero insertion {zero_ins}, dp-vs-naive {dp}; {} failed",
            bad.len()
        ),
    }
}

/// One more doubling past the stabilized cutoff must not change anything.
fn monotone_safe() -> Result<usize, String> {
    let ord = Orders::new(20, 8);
    let mut checked = 0;
    for k in AugIndex::all_of_weight(4).into_iter().filter(AugIndex::is_admissible) {
        let s = li1_aug(&k, ord).map_err(|e| e.to_string())?;
        let again = li1_aug_at(&k, ord, 2 * s.cutoff).map_err(|e| e.to_string())?;
        if again != s.series {
            return Err(format!("li1 {k} moved after cutoff {}", s.cutoff));
        }
        checked += 1;
    }
    let q_ord = Orders::q_only(25);
    for w in Word6::enumerate_admissible(3) {
        let fs = lq_zero_factors(&w, &Param::Infinity, &Param::Infinity, &Param::Mono(Monomial::one()))
            .map_err(|e| e.to_string())?;
        let s = iq_zero_series(&fs, q_ord).map_err(|e| e.to_string())?;
        if iq_zero_series_at(&fs, q_ord, 2 * s.cutoff).map_err(|e| e.to_string())? != s.series {
            return Err(format!("f({w}) moved after cutoff {}", s.cutoff));
        }
        checked += 1;
    }
    Ok(checked)
}

fn section3() -> Outcome {
    let mut o = summarize(&[&suite_section3(ParamsSection3::default(), &Settings::default())], false);
    match monotone_safe() {
        Ok(n) => o.detail.push_str(&format!("; {n} series unchanged one doubling past stabilization")),
        Err(e) => {
            o.pass = false;
            o.detail.push_str(&format!("; {e}"));
        }
    }
    o
}

fn bridges() -> Outcome {
    let (total, bad) = bridge_failures(4, 3);
    Outcome { pass: bad.is_empty(), detail: format!("{total} checks, {} failed", bad.len()) }
}

fn classical() -> Outcome {
    let w = Word6::parse("BD.AB").unwrap();
    match classical_limit_check(&w, [1.0, -1.0, 3.0, 2.0], 1 << 12) {
        Ok(c) => Outcome {
            pass: c.discrepancy <= LIMIT_TOLERANCE && c.duality_gap <= DUALITY_TOLERANCE,
            detail: format!(
                "q-side {:.9}, integral {:.9}, discrepancy {:.2e}, duality gap {:.2e}",
                c.q_side, c.classical, c.discrepancy, c.duality_gap
            ),
        },
        Err(e) => Outcome { pass: false, detail: e.to_string() },
    }
}

fn grid_equal(a: &LazyExpr, b: &LazyExpr) -> bool {
    values_equal(a, b, Mode::Grid, 0, 0).map(|v| v == Verdict::Equal).unwrap_or(false)
}

fn spot_values() -> Outcome {
    let q = LazyExpr::parse_mono("q").unwrap();
    let qi = LazyExpr::parse_mono("q^-1").unwrap();
    let one = LazyExpr::constant(int(1));
    let mut d = ExprDomain::new();
    let f = f_kl(&mut d, 1, 1, 0).unwrap();
    let z = z_functional(&mut d, &Word3::parse("y.x").unwrap(), 0, false).unwrap();
    let v = d.finish_many(&[f, z]);
    let f_ok = grid_equal(&v[0], &one.div(&one.sub(&qi).mul(&one.sub(&q))).unwrap());
    let z_ok = grid_equal(&v[1], &q.div(&one.sub(&q).mul(&one.sub(&q))).unwrap());
    let ints = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<Rat>>();
    let bz = zeta_bz(&[2], 4).unwrap().series.q_coeffs();
    let sz = zeta_sz(&[2], 4).unwrap().series.q_coeffs();
    let bz_ok = bz[1..] == ints(&[1, 3, 4, 7])[..];
    let sz_ok = sz[1..] == ints(&[0, 1, 2, 4])[..];
    Outcome {
        pass: f_ok && z_ok && bz_ok && sz_ok,
        detail: format!("f11(0) {f_ok}, Z0(yx) {z_ok}, bz(2) {bz_ok}, sz(2) {sz_ok}"),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("duality sweep", sweep),
        ("proved-case suites", proved_suites),
        ("q-difference identities and chain DP", random_identities),
        ("polylogarithm and q-zeta dualities", section3),
        ("cross-formulation bridges", bridges),
        ("classical limit", classical),
        ("spot values", spot_values),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = f();
        all &= o.pass;
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {}: {name} ... {verdict} ({}; {:.1}s)", i + 1, o.detail, t.elapsed().as_secs_f64());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
