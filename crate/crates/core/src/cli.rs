//! Command-line front end: `verify`, `sweep`, `suite` and `eval`, with JSON
//! output and exit codes 0 (success), 1 (usage or config error), 2
//! (falsification candidate or comparison mismatch), 3 (failure in a proved
//! suite).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qint::{f_kl, g_klmn, iq, lq, z_functional, ExprDomain, FactorSpec};
use crate::qseries::{li1_aug, zeta_bz, zeta_sz, Orders};
use crate::shifts::{Assignment, Param};
use crate::valuedomain::{parse_rat, rat_to_string, LazyExpr, Mode, Monomial, Point, Rat, Var};
use crate::verifier::{
    classical_suite, suite_41, suite_42, suite_43, suite_44, suite_section3, sweep_main, verify_main, Outcome, Params42,
    ParamsSection3, Report, Settings,
};
use crate::words::{AugIndex, Word3, Word6};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FALSIFIED: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "qdual", version, about = "Exact duality checks for iterated q-integrals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check L_q(w) = L_q(tau(w)) for one word.
    Verify {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, default_value_t = 0)]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Check every admissible word up to a length and every N up to a bound.
    Sweep {
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        nmax: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named suite.
    Suite {
        name: SuiteName,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long)]
        nmax: Option<u32>,
        /// q-truncation order for series suites.
        #[arg(long)]
        mq: Option<usize>,
        /// z-truncation order for series suites.
        #[arg(long)]
        mz: Option<usize>,
        /// Weight bound for the section3 suite.
        #[arg(long)]
        weight: Option<u32>,
        /// Chain length for the classical check.
        #[arg(long)]
        steps: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Print an exact value or series.
    Eval {
        kind: EvalKind,
        #[command(flatten)]
        args: EvalArgs,
        /// JSON value dump to compare against; a mismatch exits with 2.
        #[arg(long)]
        compare_file: Option<PathBuf>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    S41,
    S42,
    S43,
    S44,
    Section3,
    Classical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalKind {
    Lq,
    Iq,
    Z,
    F,
    G,
    ZetaBz,
    ZetaSz,
    Li1,
}

#[derive(Args, Debug, Default)]
pub struct Common {
    #[arg(long)]
    pub mode: Option<CliMode>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub prime: Option<u64>,
    #[arg(long)]
    pub grid_budget: Option<u128>,
    /// Omit per-case wall times so reports are byte-reproducible.
    #[arg(long)]
    pub no_timings: bool,
    /// JSON file with default values for these settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CliMode {
    Grid,
    RandomExact,
    Modp,
}

impl From<CliMode> for Mode {
    fn from(m: CliMode) -> Mode {
        match m {
            CliMode::Grid => Mode::Grid,
            CliMode::RandomExact => Mode::RandomExact,
            CliMode::Modp => Mode::Modp,
        }
    }
}

#[derive(Args, Debug, Default)]
pub struct EvalArgs {
    /// Word: six-letter for lq, x/y/z for z.
    #[arg(long, allow_hyphen_values = true)]
    pub word: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub l: Option<usize>,
    #[arg(long)]
    pub m: Option<i32>,
    /// Fourth index of g.
    #[arg(long)]
    pub nn: Option<i32>,
    /// Values of B, C, D for lq: a monomial, 0 or inf.
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub c: Option<String>,
    #[arg(long)]
    pub d: Option<String>,
    /// Base point of the chains for iq.
    #[arg(long)]
    pub x: Option<String>,
    /// iq factor `u` or bracket `u,v`; repeatable.
    #[arg(long = "factor")]
    pub factors: Vec<String>,
    /// Evaluation point, e.g. `q=2,B=3`.
    #[arg(long)]
    pub point: Option<String>,
    /// Index `2,1` for zeta values.
    #[arg(long)]
    pub index: Option<String>,
    /// Augmented index `2:1,1:0` for li1.
    #[arg(long)]
    pub aug: Option<String>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub mz: Option<usize>,
    /// Apply q -> 1/q (z only).
    #[arg(long)]
    pub invert_q: bool,
}

/// Defaults read from `--config`; every field is optional.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub mode: Option<Mode>,
    pub seed: Option<u64>,
    pub trials: Option<usize>,
    pub prime: Option<u64>,
    pub grid_budget: Option<u64>,
    pub timings: Option<bool>,
    pub output: Option<PathBuf>,
    pub kmax: Option<usize>,
    pub nmax: Option<u32>,
    pub mq: Option<usize>,
    pub mz: Option<usize>,
}

struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Usage {
        Usage(e.to_string())
    }
}

fn load_config(path: &Option<PathBuf>) -> std::result::Result<Config, Usage> {
    let Some(p) = path else { return Ok(Config::default()) };
    let text = std::fs::read_to_string(p).map_err(|e| Usage(format!("cannot read {}: {e}", p.display())))?;
    serde_json::from_str(&text).map_err(|e| Usage(format!("bad config {}: {e}", p.display())))
}

fn settings(common: &Common, cfg: &Config) -> Settings {
    let mut s = Settings::default();
    if let Some(m) = common.mode.map(Mode::from).or(cfg.mode) {
        s.eq.mode = m;
    }
    if let Some(v) = common.seed.or(cfg.seed) {
        s.eq.seed = v;
    }
    if let Some(v) = common.trials.or(cfg.trials) {
        s.eq.trials = v;
    }
    if let Some(v) = common.prime.or(cfg.prime) {
        s.eq.prime = v;
    }
    if let Some(v) = common.grid_budget.or(cfg.grid_budget.map(u128::from)) {
        s.eq.grid_budget = v;
    }
    s.timings = !common.no_timings && cfg.timings.unwrap_or(true);
    s
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> std::result::Result<(), Usage> {
    match path {
        Some(p) => std::fs::write(p, format!("{text}\n")).map_err(|e| Usage(format!("cannot write {}: {e}", p.display()))),
        None => writeln!(out, "{text}").map_err(|e| Usage(e.to_string())),
    }
}

fn report_exit(r: &Report) -> i32 {
    match r.outcome() {
        Outcome::Clean => EXIT_OK,
        Outcome::Falsification => EXIT_FALSIFIED,
        Outcome::InternalFailure => EXIT_INTERNAL,
    }
}

/// Parses `q=2,B=3/2` into a point.
pub fn parse_point(text: &str) -> Result<Point<Rat>> {
    let mut p: Point<Rat> = Default::default();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::Parse { pos: 0, msg: format!("expected var=value, got {part:?}") };
        let (name, val) = part.split_once('=').ok_or_else(bad)?;
        let v = Var::from_name(name.trim()).ok_or_else(bad)?;
        p[v.index()] = Some(parse_rat(val.trim()).ok_or_else(bad)?);
    }
    Ok(p)
}

fn need<T: Clone>(v: &Option<T>, flag: &str) -> std::result::Result<T, Usage> {
    v.clone().ok_or_else(|| Usage(format!("missing --{flag}")))
}

fn param_or(text: &Option<String>, default: Param) -> Result<Param> {
    text.as_deref().map(Param::parse).unwrap_or(Ok(default))
}

fn expr_value(e: &LazyExpr, point: &Option<String>) -> Result<Value> {
    match point {
        None => Ok(json!({ "expr": e.render() })),
        Some(p) => Ok(json!({ "point": p, "value": rat_to_string(&e.eval_rat(&parse_point(p)?)?) })),
    }
}

fn parse_index(text: &str) -> std::result::Result<Vec<u32>, Usage> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<u32>().map_err(|_| Usage(format!("bad index entry {s:?}"))))
        .collect()
}

fn eval_value(kind: EvalKind, a: &EvalArgs) -> std::result::Result<Value, Usage> {
    let order = a.order.unwrap_or(10);
    let series = |s: crate::qseries::Stabilized| json!({ "series": s.series.to_json(), "cutoff": s.cutoff });
    let mut dom = ExprDomain::new();
    let v = match kind {
        EvalKind::Lq => {
            let w = Word6::parse(&need(&a.word, "word")?)?;
            let asg = Assignment::with(
                a.n.unwrap_or(0),
                param_or(&a.b, Param::var(Var::B))?,
                param_or(&a.c, Param::var(Var::C))?,
                param_or(&a.d, Param::var(Var::D))?,
            );
            let r = lq(&mut dom, &w, &asg)?;
            expr_value(&dom.finish(r), &a.point)?
        }
        EvalKind::Iq => {
            let x = Monomial::parse(a.x.as_deref().unwrap_or("1"))?;
            let factors = a
                .factors
                .iter()
                .map(|f| match f.split_once(',') {
                    Some((u, v)) => Ok(FactorSpec::Bracket(Param::parse(u.trim())?, Param::parse(v.trim())?)),
                    None => Ok(FactorSpec::Single(Param::parse(f.trim())?)),
                })
                .collect::<Result<Vec<_>>>()?;
            let r = iq(&mut dom, &x, &factors, a.n.unwrap_or(0))?;
            expr_value(&dom.finish(r), &a.point)?
        }
        EvalKind::Z => {
            let w = Word3::parse(&need(&a.word, "word")?)?;
            let r = z_functional(&mut dom, &w, a.n.unwrap_or(0), a.invert_q)?;
            expr_value(&dom.finish(r), &a.point)?
        }
        EvalKind::F => {
            let r = f_kl(&mut dom, need(&a.k, "k")?, need(&a.l, "l")?, a.n.unwrap_or(0))?;
            expr_value(&dom.finish(r), &a.point)?
        }
        EvalKind::G => {
            let r = g_klmn(&mut dom, need(&a.k, "k")?, need(&a.l, "l")?, need(&a.m, "m")?, need(&a.nn, "nn")?, a.n.unwrap_or(0))?;
            expr_value(&dom.finish(r), &a.point)?
        }
        EvalKind::ZetaBz => series(zeta_bz(&parse_index(&need(&a.index, "index")?)?, order)?),
        EvalKind::ZetaSz => series(zeta_sz(&parse_index(&need(&a.index, "index")?)?, order)?),
        EvalKind::Li1 => {
            let k = AugIndex::parse(&need(&a.aug, "aug")?)?;
            series(li1_aug(&k, Orders::new(order, a.mz.unwrap_or(0)))?)
        }
    };
    Ok(v)
}

/// Compares `value` fields (or series arrays) of two dumps.
fn same_value(ours: &Value, theirs: &Value) -> bool {
    for key in ["value", "series"] {
        if let (Some(a), Some(b)) = (ours.get(key), theirs.get(key)) {
            return a == b;
        }
    }
    ours == theirs
}

fn run_command(cli: Cli, out: &mut dyn Write) -> std::result::Result<i32, Usage> {
    match cli.command {
        Command::Verify { word, n, common } => {
            let cfg = load_config(&common.config)?;
            let s = settings(&common, &cfg);
            let w = Word6::parse(&word)?;
            let r = verify_main(&w, n, &s)?;
            emit(&r.to_json(), common.output.as_ref().or(cfg.output.as_ref()), out)?;
            Ok(report_exit(&r))
        }
        Command::Sweep { kmax, nmax, common } => {
            let cfg = load_config(&common.config)?;
            let s = settings(&common, &cfg);
            let r = sweep_main(kmax.or(cfg.kmax).unwrap_or(3), nmax.or(cfg.nmax).unwrap_or(2), &s);
            emit(&r.to_json(), common.output.as_ref().or(cfg.output.as_ref()), out)?;
            Ok(report_exit(&r))
        }
        Command::Suite { name, kmax, nmax, mq, mz, weight, steps, common } => {
            let cfg = load_config(&common.config)?;
            let s = settings(&common, &cfg);
            let kmax = kmax.or(cfg.kmax);
            let nmax = nmax.or(cfg.nmax);
            let mq = mq.or(cfg.mq);
            let mz = mz.or(cfg.mz);
            let r = match name {
                SuiteName::S41 => suite_41(kmax.unwrap_or(3), nmax.unwrap_or(3), &s),
                SuiteName::S42 => {
                    let d = Params42::default();
                    let p = Params42 { kl_max: kmax.unwrap_or(d.kl_max), n_max: nmax.unwrap_or(d.n_max), ..d };
                    suite_42(p, &s)
                }
                SuiteName::S43 => suite_43(kmax.unwrap_or(4), mq.unwrap_or(25), &s),
                SuiteName::S44 => suite_44(kmax.unwrap_or(4), &s),
                SuiteName::Section3 => {
                    let d = ParamsSection3::default();
                    let orders = Orders::new(mq.unwrap_or(d.orders.mq), mz.unwrap_or(d.orders.mz));
                    let w = weight.unwrap_or(d.weight_max);
                    suite_section3(ParamsSection3 { weight_max: w, orders, li_weight_max: w, ..d }, &s)
                }
                SuiteName::Classical => classical_suite([1.0, -1.0, 3.0, 2.0], steps.unwrap_or(1 << 14), &s),
            };
            emit(&r.to_json(), common.output.as_ref().or(cfg.output.as_ref()), out)?;
            Ok(report_exit(&r))
        }
        Command::Eval { kind, args, compare_file } => {
            let mut v = eval_value(kind, &args)?;
            v["kind"] = serde_json::to_value(kind).expect("serializable");
            emit(&serde_json::to_string_pretty(&v).expect("serializable"), None, out)?;
            if let Some(p) = compare_file {
                let text = std::fs::read_to_string(&p).map_err(|e| Usage(format!("cannot read {}: {e}", p.display())))?;
                let theirs: Value =
                    serde_json::from_str(&text).map_err(|e| Usage(format!("bad dump {}: {e}", p.display())))?;
                if !same_value(&v, &theirs) {
                    return Ok(EXIT_FALSIFIED);
                }
            }
            Ok(EXIT_OK)
        }
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match run_command(cli, out) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
