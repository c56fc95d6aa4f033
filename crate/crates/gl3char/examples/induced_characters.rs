//! Induced class functions from the three maximal tori: the closed-form
//! fast path against the literal Frobenius-formula sweep, and Frobenius
//! reciprocity against the irreducible table.
//!
//! Run with: cargo run --release --example induced_characters

use gl3char::engine::Engine;
use gl3char::induction::{
    all_torus_specs, induce_bruteforce, induce_torus_fast, restriction_inner, FusionKey,
};
use gl3char::tensorlab::decompose;

fn main() {
    let eng = Engine::for_q(3).unwrap();
    let t = eng.tower();

    // Fast path = brute force, for every character of every torus.
    let mut checked = 0;
    for key in [FusionKey::TorusI, FusionKey::TorusM, FusionKey::TorusA] {
        for spec in all_torus_specs(t, key) {
            let fast = induce_torus_fast(&eng, &spec).unwrap();
            let brute = induce_bruteforce(&eng, &spec).unwrap();
            assert!(fast.eq_exact(&brute));
            checked += 1;
        }
    }
    println!("fast == bruteforce for all {} torus characters at q=3", checked);

    // A sample induction and its decomposition.
    let spec = gl3char::induction::SubgroupSpec::torus_a(t, 1);
    let ind = induce_torus_fast(&eng, &spec).unwrap();
    println!(
        "\nInd from the anisotropic torus, character exponent 1: degree {}",
        ind.degree_value()
    );
    let dec = decompose(&eng, &ind).unwrap();
    for (label, mult) in &dec.multiplicities {
        println!("  {:?} x{}", label, mult);
    }

    // Frobenius reciprocity: <Ind theta, chi> = <theta, Res chi>.
    let chi = eng.irr(&eng.irr_labels()[5]);
    let lhs = eng.inner(&ind, &chi);
    let rhs = restriction_inner(&eng, &spec, &chi);
    println!("\nreciprocity check: {} = {}", lhs, rhs);
    assert_eq!(lhs, rhs);
}
