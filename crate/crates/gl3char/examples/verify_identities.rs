//! Machine-verify the tensor-product identity list: every case, exact
//! class-function equality, no tolerances.
//!
//! Run with: cargo run --release --example verify_identities

use gl3char::engine::Engine;
use gl3char::tensorlab::{verify_corollary1, verify_theorem1, Sweep, ALL_THEOREM1_CASES};

fn main() {
    for q in [3u32, 4] {
        let eng = Engine::for_q(q).unwrap();
        println!("q = {}:", q);
        for case in ALL_THEOREM1_CASES {
            let rep = verify_theorem1(&eng, case, Sweep::Auto, 0, false);
            println!(
                "  case {:<4} {}  ({} tuples, {} skipped as degenerate)",
                case.name(),
                if rep.passed { "pass" } else { "FAIL" },
                rep.tuples_checked,
                rep.skipped_degenerate
            );
            for n in &rep.notes {
                println!("        {}", n);
            }
        }
        let rep = verify_corollary1(&eng, Sweep::Auto, 0);
        println!(
            "  corollary {}  ({} tuples)",
            if rep.passed { "pass" } else { "FAIL" },
            rep.tuples_checked
        );
        println!();
    }
}
