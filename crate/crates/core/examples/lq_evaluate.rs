//! Builds `L_q(w)` symbolically and evaluates it exactly at a point.

use qdual::qint::{lq, lq_expr, PointDomain};
use qdual::shifts::Assignment;
use qdual::valuedomain::{int, rat, Point, Rat, Var};
use qdual::words::Word6;

fn main() -> qdual::Result<()> {
    let w = Word6::parse("BD.AB")?;
    let asg = Assignment::generic(0);
    let e = lq_expr(&w, &asg)?;
    println!("L_q({w}) at N = 0: {}", e.render());

    let mut pt: Point<Rat> = Default::default();
    pt[Var::Q.index()] = Some(int(2));
    pt[Var::B.index()] = Some(int(3));
    pt[Var::D.index()] = Some(int(1));
    println!("value at q=2, B=3, D=1: {}", e.eval_rat(&pt)?);

    // the same number without building an expression
    pt[Var::C.index()] = Some(rat(1, 2));
    let mut dom = PointDomain::new(pt, int(0));
    println!("direct evaluation: {}", lq(&mut dom, &w, &asg)?);
    Ok(())
}
