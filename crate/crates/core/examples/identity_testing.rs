//! Deciding equality of rational expressions: the certified grid test and
//! the randomized modular test.

use qdual::qint::lq_dual_pair;
use qdual::shifts::Assignment;
use qdual::valuedomain::{values_equal, LazyExpr, Mode, Verdict};
use qdual::words::Word6;

fn main() -> qdual::Result<()> {
    let w = Word6::parse("CD.BC.AB")?;
    let (lhs, rhs) = lq_dual_pair(&w, &Assignment::generic(1))?;
    println!("{} nodes, degree bound in q: {:?}", lhs.node_count(), lhs.cert().num);
    for mode in [Mode::Grid, Mode::Modp] {
        println!("{}: {:?}", mode.name(), values_equal(&lhs, &rhs, mode, 1, 3)?);
    }

    // a false identity yields a witness point
    let q = LazyExpr::parse_mono("q")?;
    let one = LazyExpr::constant(qdual::valuedomain::int(1));
    match values_equal(&q.mul(&q), &one, Mode::Grid, 0, 0)? {
        Verdict::NotEqual(wit) => println!("q^2 != 1: at {:?} got {} vs {}", wit.point, wit.lhs, wit.rhs),
        v => println!("unexpected: {v:?}"),
    }
    Ok(())
}
