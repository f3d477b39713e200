//! Sweeps the duality over all admissible words of bounded length and
//! prints the JSON report summary.

use qdual::valuedomain::Mode;
use qdual::verifier::{sweep_main, Settings};

fn main() {
    let mut s = Settings::with_mode(Mode::Grid);
    s.timings = false;
    let r = sweep_main(3, 2, &s);
    println!("{} cases, all passed: {}", r.summary.total, r.all_passed());
    println!("{}", serde_json::to_string_pretty(&r.summary).expect("serializable"));
}
