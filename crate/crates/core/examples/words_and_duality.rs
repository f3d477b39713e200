//! Admissible words, the duality map and the invariants it preserves.

use qdual::words::{AugIndex, Collapsed, Word6};

fn main() -> qdual::Result<()> {
    for k in 0..=3 {
        println!("length {k}: {} admissible words", Word6::enumerate_admissible(k).len());
    }

    let w = Word6::parse("BD.AD.AB")?;
    let t = w.tau();
    println!("w = {w}, tau(w) = {t}, tau(tau(w)) = {}", t.tau());
    println!("m(w) = {}, kappa(w) = {}", w.m(), w.kappa());
    if let Collapsed::Word(z) = w.collapse() {
        println!("three-letter image: {z}");
    }

    let k = AugIndex::parse("2:0")?;
    println!("augmented index {k}: word {}, dual {}", k.to_word(), k.dual()?);
    Ok(())
}
