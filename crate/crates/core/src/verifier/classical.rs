//! Floating-point check of the `q -> 1` limit against the real iterated
//! integral: adaptive Gauss-Kronrod quadrature on the outer levels, the
//! innermost single integral in closed form.

use crate::error::{Error, Result};
use crate::shifts::shift_table;
use crate::words::{Mark, Word6};

use super::{run_cases, Case, CaseVerdict, Kind, Report, Settings};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

const MAX_SPLITS: usize = 4000;

/// `(kronrod, |kronrod - gauss|)` on `[a, b]`.
fn gk15(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x)? + f(c + x)?;
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    Ok((k * h, ((k - g) * h).abs()))
}

/// Globally adaptive: keeps bisecting the interval with the largest error
/// estimate until the total estimate drops below `tol`.
fn adapt(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (v, e) = gk15(f, a, b)?;
    let mut parts = vec![(a, b, v, e)];
    for _ in 0..MAX_SPLITS {
        let total: f64 = parts.iter().map(|p| p.3).sum();
        if total <= tol {
            return Ok(parts.iter().map(|p| p.2).sum());
        }
        let i = (0..parts.len()).max_by(|&i, &j| parts[i].3.total_cmp(&parts[j].3)).expect("nonempty");
        let (a, b, _, _) = parts.swap_remove(i);
        let m = 0.5 * (a + b);
        if !(a < m && m < b) {
            break;
        }
        for (x, y) in [(a, m), (m, b)] {
            let (v, e) = gk15(f, x, y)?;
            if !v.is_finite() {
                return Err(Error::NumericalInstability(format!("integrand not finite on [{x}, {y}]")));
            }
            parts.push((x, y, v, e));
        }
    }
    Err(Error::NumericalInstability(format!("quadrature on [{a}, {b}] did not reach tolerance {tol:e}")))
}

/// `int_{x < t_1 < ... < t_k < y} prod_j (1/(t_j - u_j) - 1/(t_j - v_j)) dt_j`.
pub fn nested_integral(pairs: &[(f64, f64)], x: f64, y: f64, tol: f64) -> Result<f64> {
    let Some((&(u, v), rest)) = pairs.split_last() else {
        return Ok(1.0);
    };
    if rest.is_empty() {
        // innermost level in closed form
        return Ok(((y - u) / (x - u)).abs().ln() - ((y - v) / (x - v)).abs().ln());
    }
    let mut f = |t: f64| -> Result<f64> {
        let inner = nested_integral(rest, x, t, tol * 1e-3)?;
        Ok((1.0 / (t - u) - 1.0 / (t - v)) * inner)
    };
    adapt(&mut f, x, y, tol)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalCheck {
    /// `(1 - q_N)^k L_{q_N}(w)` with `q_N = (A/D)^(1/N)`.
    pub q_side: f64,
    pub classical: f64,
    pub discrepancy: f64,
    pub dual_classical: f64,
    pub duality_gap: f64,
}

fn mark_value(m: Mark, r: &[f64; 4]) -> f64 {
    match m {
        Mark::A => r[0],
        Mark::B => r[1],
        Mark::C => r[2],
        Mark::D => r[3],
    }
}

fn classical_l(w: &Word6, r: &[f64; 4]) -> Result<f64> {
    let pairs: Vec<(f64, f64)> = w
        .letters()
        .iter()
        .map(|l| {
            let (u, v) = l.marks();
            (mark_value(u, r), mark_value(v, r))
        })
        .collect();
    nested_integral(&pairs, r[0], r[3], 1e-11)
}

/// Compares the scaled q-sum with the real integral for `(A, B, C, D)`,
/// `0 < A < D`, `B, C` outside `[A, D]`.
pub fn classical_limit_check(w: &Word6, reals: [f64; 4], n_steps: u32) -> Result<ClassicalCheck> {
    let [a, b, c, d] = reals;
    if !w.is_admissible() {
        return Err(Error::NotAdmissible(w.to_string()));
    }
    if !(0.0 < a && a < d) || (a..=d).contains(&b) || (a..=d).contains(&c) || n_steps == 0 {
        return Err(Error::Invalid("need 0 < A < D, B and C outside [A, D], N > 0".into()));
    }
    let q = (a / d).powf(1.0 / n_steps as f64);
    let table = shift_table(w);
    let k = w.len();
    let mut prefix: Vec<f64> = Vec::new();
    for j in 1..=k {
        let (u, v) = w.letters()[j - 1].marks();
        let uj = mark_value(u, &reals) * q.powi(table.exponent(j, u));
        let vj = mark_value(v, &reals) * q.powi(table.exponent(j, v));
        let mut cur = Vec::with_capacity(n_steps as usize + 1);
        let mut acc = 0.0;
        for n in 0..=n_steps {
            let t = a * q.powi(-(n as i32));
            let f = t / (t - uj) - t / (t - vj);
            acc += if j == 1 { f } else { f * prefix[n as usize] };
            cur.push(acc);
        }
        prefix = cur;
    }
    let sum = prefix.last().copied().unwrap_or(1.0);
    let q_side = (1.0 - q).powi(k as i32) * sum;
    let classical = classical_l(w, &reals)?;
    let dual_classical = classical_l(&w.tau(), &reals)?;
    Ok(ClassicalCheck {
        q_side,
        classical,
        discrepancy: (q_side - classical).abs(),
        dual_classical,
        duality_gap: (classical - dual_classical).abs(),
    })
}

/// Tolerance for `(BD)(AB)` at `N = 2^12`.
pub const LIMIT_TOLERANCE: f64 = 1e-3;
pub const DUALITY_TOLERANCE: f64 = 1e-6;

/// The limit gap decays like `1/N`; the suite allows `8/N` for every word.
pub fn suite_limit_tolerance(n_steps: u32) -> f64 {
    8.0 / n_steps as f64
}

/// The classical check on every admissible word of length at most 2.
pub fn classical_suite(reals: [f64; 4], n_steps: u32, settings: &Settings) -> Report {
    let words: Vec<Word6> = (0..=2).flat_map(Word6::enumerate_admissible).collect();
    let cases = run_cases(&words, settings, |w| {
        let case = Case::new("classical-limit", w, w.tau(), Some(n_steps), Kind::Proved);
        match classical_limit_check(w, reals, n_steps) {
            Ok(c) => {
                let ok = c.discrepancy <= suite_limit_tolerance(n_steps) && c.duality_gap <= DUALITY_TOLERANCE;
                let note = format!(
                    "q-side {:.9}, integral {:.9}, dual integral {:.9}, |limit gap| {:.2e}, |duality gap| {:.2e}",
                    c.q_side, c.classical, c.dual_classical, c.discrepancy, c.duality_gap
                );
                case.with(if ok { CaseVerdict::ProbablyEqual } else { CaseVerdict::NotEqual }, None, Some(note))
            }
            Err(e) => case.with(CaseVerdict::Error, None, Some(e.to_string())),
        }
    });
    Report::new("classical", settings.report_config(&[("n_steps", n_steps as u64)]), cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_integral_is_log_ratio() {
        // int_1^2 1/(t+1) - 1/(t-3) dt = ln(3/2) - ln(1/2)
        let v = nested_integral(&[(-1.0, 3.0)], 1.0, 2.0, 1e-12).unwrap();
        assert!((v - (1.5f64.ln() - 0.5f64.ln())).abs() < 1e-10);
        assert_eq!(nested_integral(&[], 1.0, 2.0, 1e-12).unwrap(), 1.0);
    }

    #[test]
    fn empty_word_is_exact() {
        let c = classical_limit_check(&Word6::empty(), [1.0, -1.0, 3.0, 2.0], 16).unwrap();
        assert_eq!(c.discrepancy, 0.0);
        assert_eq!(c.q_side, 1.0);
    }
}
