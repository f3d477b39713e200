//! Position-dependent q-shifts of the four parameters.

use qdual::shifts::{shift_table, shifted_pair, Assignment};
use qdual::words::Word6;

fn main() -> qdual::Result<()> {
    let w = Word6::parse("BD.AB")?;
    let t = shift_table(&w);
    for (j, (d, e)) in t.direct.iter().zip(&t.dual).enumerate() {
        println!("position {}: (a,b,c,d) = {d:?}, dual = {e:?}", j + 1);
    }
    let asg = Assignment::generic(1);
    for j in 1..=w.len() {
        let (u, v) = shifted_pair(&w, j, &asg);
        println!("factor {j}: [{u}, {v}]");
    }
    Ok(())
}
