//! The canonical conjugacy class list: representatives, parameters and
//! exact sizes, with the class equation as a cross-check.
//!
//! Run with: cargo run --release --example conjugacy_classes

use gl3char::engine::Engine;
use gl3char::group::group_order;

fn main() {
    for q in [2u32, 3, 4] {
        let eng = Engine::for_q(q).unwrap();
        let classes = eng.classes();
        println!("GL(3,{}): {} classes", q, classes.count());
        let mut total = 0u64;
        for d in &classes.list {
            total += d.size;
            println!(
                "  {:?}  size {:>8}  rep rows {:?}",
                d.label,
                d.size,
                d.representative.row_major()
            );
        }
        println!(
            "  class equation: sum of sizes = {} = |G| = {}\n",
            total,
            group_order(q)
        );
        assert_eq!(total, group_order(q));
    }

    // classify() sends an arbitrary invertible matrix to its label.
    let eng = Engine::for_q(5).unwrap();
    let t = eng.tower();
    let classes = eng.classes();
    let m = gl3char::group::Mat3 {
        e: [[2, 1, 4], [0, 3, 1], [1, 1, 1]],
    };
    println!(
        "classify [[2,1,4],[0,3,1],[1,1,1]] over F_5: {:?}",
        classes.classify(t, &m).unwrap()
    );
}
