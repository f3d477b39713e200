//! Frozen values checked against brute-force oracles.

mod common;

use common::*;
use num_traits::{One, Zero};
use qdual::qint::{f_kl, g_klmn, lq, lq_expr, z_functional, ExprDomain, PointDomain};
use qdual::qseries::{li_q, li_q_integral, zeta_bz, zeta_sz, Orders};
use qdual::shifts::Assignment;
use qdual::valuedomain::{int, rat, values_equal, LazyExpr, Mode, Monomial, Point, Rat, Var, Verdict};
use qdual::words::{Word3, Word6};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn w6(s: &str) -> Word6 {
    Word6::parse(s).unwrap()
}

fn point(q: Rat, b: Rat, c: Rat, d: Rat) -> Point<Rat> {
    let mut p: Point<Rat> = Default::default();
    p[Var::Q.index()] = Some(q);
    p[Var::B.index()] = Some(b);
    p[Var::C.index()] = Some(c);
    p[Var::D.index()] = Some(d);
    p
}

fn grid_equal(a: &LazyExpr, b: &LazyExpr) -> bool {
    values_equal(a, b, Mode::Grid, 0, 0).unwrap() == Verdict::Equal
}

#[test]
fn lq_bd_ab_at_n0_matches_chain_enumeration() {
    let e = lq_expr(&w6("BD.AB"), &Assignment::generic(0)).unwrap();
    let got = e.eval_rat(&point(int(2), int(3), int(5), int(1))).unwrap();
    // A = D = 1: brackets [B q, D / q] and [D q, B q^2]
    let fs = [F::Two(P::Val(int(6)), P::Val(rat(1, 2))), F::Two(P::Val(int(2)), P::Val(int(12)))];
    let want = naive_iq(&int(1), &int(2), &fs, 0).unwrap();
    assert_eq!(got, want);
    assert_eq!(want, (int(1) / int(-5) - int(2)) * (int(-1) - int(1) / int(-11)));
}

#[test]
fn lq_bd_ab_pair_matches_sparse_expansion() {
    let (sw, stw) = bd_ab_pair_sparse();
    assert!(sw.same_as(&stw), "sparse expansion says the pair differs");
    let w = w6("BD.AB");
    let e = lq_expr(&w, &Assignment::generic(1)).unwrap();
    let te = lq_expr(&w.tau(), &Assignment::generic(1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 20 {
        let pt = [random_q(&mut rng), nonzero_rat(&mut rng), nonzero_rat(&mut rng), nonzero_rat(&mut rng)];
        let (Some(a), Some(b)) = (sw.eval(&pt), stw.eval(&pt)) else { continue };
        let p = point(pt[0].clone(), pt[1].clone(), pt[2].clone(), pt[3].clone());
        let (Ok(x), Ok(y)) = (e.eval_rat(&p), te.eval_rat(&p)) else { continue };
        assert_eq!((x, y), (a, b));
        checked += 1;
    }
    assert!(grid_equal(&e, &te));
}

#[test]
fn g_1111_at_one_matches_chain_enumeration() {
    for q in [int(2), int(-3), rat(1, 2), rat(5, 3)] {
        let got = g_klmn(&mut PointDomain::q_only(q.clone()), 1, 1, 1, 1, 1).unwrap();
        let fs = [F::One(P::Val(pow(&q, -2))), F::One(P::Val(q.clone()))];
        assert_eq!(got, naive_iq(&int(1), &q, &fs, 1).unwrap());
    }
}

#[test]
fn f_kl_matches_chain_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..=2usize {
        for l in 0..=2usize {
            for n in 0..=2u32 {
                let q = random_q(&mut rng);
                let got = f_kl(&mut PointDomain::q_only(q.clone()), k, l, n);
                let mut fs = vec![F::One(P::Val(pow(&q, -(n as i64) - l as i64))); k];
                fs.extend(vec![F::One(P::Val(pow(&q, k as i64))); l]);
                match naive_iq(&int(1), &q, &fs, n) {
                    Some(v) => assert_eq!(got.unwrap(), v, "f_{{{k},{l}}}({n}) at q = {q}"),
                    None => assert!(got.is_err()),
                }
            }
        }
    }
}

#[test]
fn spot_f11_at_zero() {
    let mut d = ExprDomain::new();
    let r = f_kl(&mut d, 1, 1, 0).unwrap();
    let f = d.finish(r);
    let q = LazyExpr::parse_mono("q").unwrap();
    let qi = LazyExpr::parse_mono("q^-1").unwrap();
    let one = LazyExpr::constant(int(1));
    let want = one.div(&one.sub(&qi).mul(&one.sub(&q))).unwrap();
    assert!(grid_equal(&f, &want));
}

#[test]
fn spot_z_yx_at_zero() {
    let q = LazyExpr::parse_mono("q").unwrap();
    let one = LazyExpr::constant(int(1));
    let want = q.div(&one.sub(&q).mul(&one.sub(&q))).unwrap();
    for invert in [false, true] {
        let mut d = ExprDomain::new();
        let r = z_functional(&mut d, &Word3::parse("y.x").unwrap(), 0, invert).unwrap();
        assert!(grid_equal(&d.finish(r), &want));
    }
}

#[test]
fn zeta_bz_2_is_the_divisor_sum() {
    let got = zeta_bz(&[2], 30).unwrap().series.q_coeffs();
    let want: Vec<Rat> = (0..=30u64).map(|n| int(if n == 0 { 0 } else { sigma1(n) })).collect();
    assert_eq!(got, want);
    assert_eq!(&got[..5], &[int(0), int(1), int(3), int(4), int(7)]);
}

#[test]
fn zeta_sz_2_is_the_shifted_divisor_sum() {
    let got = zeta_sz(&[2], 30).unwrap().series.q_coeffs();
    let want: Vec<Rat> = (0..=30u64).map(|n| int(sz2_coeff(n))).collect();
    assert_eq!(got, want);
    assert_eq!(&got[..5], &[int(0), int(0), int(1), int(2), int(4)]);
}

#[test]
fn q_zeta_values_match_term_by_term_sums() {
    let cases: &[(&[u32], bool)] = &[(&[1, 2], false), (&[3], false), (&[2, 2], false), (&[1, 1, 2], false), (&[0, 1], true), (&[1, 1], true), (&[2], true), (&[0, 0, 2], true)];
    for &(ks, sz) in cases {
        let got = if sz { zeta_sz(ks, 24) } else { zeta_bz(ks, 24) }.unwrap().series.q_coeffs();
        assert_eq!(got, rats(&naive_mzv(ks, 24, sz)), "{ks:?} sz={sz}");
    }
    assert_eq!(naive_mzv(&[1, 2], 30, false), naive_mzv(&[3], 30, false));
    assert_eq!(naive_mzv(&[0, 1], 30, true), naive_mzv(&[2], 30, true));
}

#[test]
fn li_1_with_free_z_is_the_double_sum() {
    let mut z = Monomial::one();
    z.exps[Var::Z.index()] = 1;
    let s = li_q(&[1], &[z], Orders::new(4, 4)).unwrap();
    // sum_{n >= 1} z^n / (1 - q^n) = sum_{n >= 1, m >= 0} z^n q^(n m)
    for i in 0..=4usize {
        for j in 0..=4usize {
            let want = if j >= 1 && i % j == 0 { Rat::one() } else { Rat::zero() };
            assert_eq!(s.get(i, j), &want, "q^{i} z^{j}");
        }
    }
}

#[test]
fn li_2_at_z_equal_q_is_the_divisor_sum() {
    let s = li_q(&[2], &[Monomial::q_pow(1)], Orders::q_only(6)).unwrap();
    assert_eq!(s.q_coeffs(), [0, 1, 3, 4, 7, 6, 12].map(int).to_vec());
}

#[test]
fn li_1_with_constant_z_sums_the_tail_exactly() {
    for z in [rat(1, 2), rat(1, 3), rat(-2, 5)] {
        let s = li_q(&[1], &[Monomial::constant(z.clone())], Orders::q_only(12)).unwrap();
        // q^0: z / (1 - z); q^i: sum over divisors n of i of z^n
        let mut want = vec![&z / (Rat::one() - &z)];
        want.extend((1..=12u64).map(|i| (1..=i).filter(|n| i % n == 0).map(|n| pow(&z, n as i64)).sum::<Rat>()));
        assert_eq!(s.q_coeffs(), want, "z = {z}");
    }
}

#[test]
fn li_q_integral_form_at_constant_arguments() {
    let zs = [Monomial::constant(rat(1, 2)), Monomial::constant(rat(1, 3))];
    let a = li_q(&[1, 2], &zs, Orders::q_only(12)).unwrap();
    let b = li_q_integral(&[1, 2], &zs, Orders::q_only(12)).unwrap().series;
    assert_eq!(a, b);
}

#[test]
fn lq_point_evaluation_agrees_with_the_expression() {
    let w = w6("CD.BC.AB");
    let asg = Assignment::generic(2);
    let e = lq_expr(&w, &asg).unwrap();
    let pt = point(int(3), int(5), rat(-1, 2), rat(2, 7));
    let mut d = PointDomain::new(pt.clone(), Rat::zero());
    assert_eq!(lq(&mut d, &w, &asg).unwrap(), e.eval_rat(&pt).unwrap());
}
