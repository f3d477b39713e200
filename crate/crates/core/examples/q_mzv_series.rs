//! q-series: q-zeta values in two models and Yamamoto-type polylogarithms.

use qdual::qseries::{li1_aug, li1_word_form, zeta_bz, zeta_sz, Orders};
use qdual::valuedomain::rat_to_string;
use qdual::words::AugIndex;

fn show(c: &[qdual::valuedomain::Rat]) -> String {
    c.iter().map(rat_to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> qdual::Result<()> {
    println!("bz(2)   : {}", show(&zeta_bz(&[2], 10)?.series.q_coeffs()));
    println!("bz(1,2) : {}", show(&zeta_bz(&[1, 2], 10)?.series.q_coeffs()));
    println!("bz(3)   : {}", show(&zeta_bz(&[3], 10)?.series.q_coeffs()));
    println!("sz(2)   : {}", show(&zeta_sz(&[2], 10)?.series.q_coeffs()));

    let k = AugIndex::parse("2:1")?;
    let ord = Orders::new(8, 3);
    let a = li1_aug(&k, ord)?;
    let b = li1_word_form(&k, ord)?;
    println!("Li({k}) matches its word form: {}", a.series == b.series);
    println!("Li({k}) self-dual: {}", a.series == li1_aug(&k.dual()?, ord)?.series);
    Ok(())
}
