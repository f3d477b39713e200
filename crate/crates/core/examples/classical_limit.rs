//! The q -> 1 limit of a scaled q-sum against the real iterated integral.

use qdual::verifier::classical_limit_check;
use qdual::words::Word6;

fn main() -> qdual::Result<()> {
    let w = Word6::parse("BD.AB")?;
    for n in [256, 1024, 4096] {
        let c = classical_limit_check(&w, [1.0, -1.0, 3.0, 2.0], n)?;
        println!("N = {n:>5}: q-side {:.9}, integral {:.9}, gap {:.2e}", c.q_side, c.classical, c.discrepancy);
    }
    println!("pi^2/6 = {:.9}", std::f64::consts::PI.powi(2) / 6.0);
    Ok(())
}
