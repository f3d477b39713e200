//! The specializations where the duality is a theorem: AD = BC q^m(w),
//! A = D, the A = 0 series, and the parity of f_{k,l}.

use qdual::valuedomain::Mode;
use qdual::verifier::{suite_41, suite_42, suite_43, suite_44, Params42, Settings};

fn main() {
    let s = Settings::with_mode(Mode::Grid);
    let p = Params42 { kl_max: 4, n_max: 3, word_len_max: 3, rec_max: 2 };
    for r in [suite_41(2, 2, &s), suite_42(p, &s), suite_43(3, 15, &s), suite_44(3, &s)] {
        let sm = &r.summary;
        println!("{:>4}: {} cases, {} equal, {} failed", r.suite, sm.total, sm.equal, sm.failed);
    }
}
