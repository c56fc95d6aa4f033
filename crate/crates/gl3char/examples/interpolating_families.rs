//! Interpolating families of unipotent pattern subgroups: the layer-size
//! coefficients, subgroup-closed zero patterns, the exhaustive n = 3
//! family search, and demonstration values over GL(4,2).
//!
//! Run with: cargo run --release --example interpolating_families

use gl3char::conjecture::{
    coefficients, enumerate_patterns, gl4, search_families_n3, UnipotentPattern,
};
use gl3char::engine::Engine;

fn main() {
    // Layer sizes c_j(n): the expansion of (1+q)(1+q+q^2)...
    for n in 3..=6u32 {
        println!("c(n={}) = {:?}", n, coefficients(n).unwrap());
    }

    // Subgroup-closed patterns.
    for (n, i) in [(3u32, 1u32), (4, 1), (4, 2), (4, 3)] {
        let pats = enumerate_patterns(n, i);
        println!(
            "n={} i={}: {} closed patterns: {:?}",
            n,
            i,
            pats.len(),
            pats.iter().map(|p| &p.zeros).collect::<Vec<_>>()
        );
    }

    // Exhaustive search over the valid two-layer families at n = 3.
    let eng = Engine::for_q(4).unwrap();
    println!("\nfamily search at q = 4 (both candidate layers):");
    for (fam, rep) in search_families_n3(&eng, &[1, 2]).unwrap() {
        println!(
            "  layer-1 pattern {:?}: {} ({} tuples)",
            fam.layers[1][0].zeros,
            if rep.passed { "pass" } else { "FAIL" },
            rep.tuples_checked
        );
    }

    // For n >= 4 the left-hand side needs character data beyond GL(3);
    // the induced values themselves are still computable at toy scale.
    println!("\nGL(4,2) induced-character values (trivial center):");
    let group = gl4::enumerate_gl42();
    println!("  |GL(4,2)| = {}", group.len());
    let full = UnipotentPattern::full_group(4);
    let last_col = UnipotentPattern::new(4, [(1, 2), (1, 3), (2, 3)]);
    for (name, pat) in [("N", &full), ("last-column N'", &last_col)] {
        let v = gl4::gamma_value(&group, pat, gl4::identity());
        println!("  Gamma_{{{}}} at the identity: {}", name, v);
    }
}
