//! Build the character table of GL(3,F_q) and run its validation battery.
//!
//! Run with: cargo run --release --example character_table

use gl3char::chartable::validate_table;
use gl3char::engine::Engine;

fn main() {
    let eng = Engine::for_q(3).unwrap();
    println!("tower: {}", eng.tower().fingerprint());
    println!(
        "GL(3,{}): |G| = {}, {} conjugacy classes",
        eng.q(),
        eng.group_order(),
        eng.class_count()
    );

    // The full table: one exact class function per irreducible label.
    println!("\nirreducible characters:");
    for label in eng.irr_labels() {
        let cf = eng.irr(label);
        println!(
            "  {:?}  degree {}  value at the first cubic class: {}",
            label,
            label.degree(eng.q()),
            cf.values[eng.class_count() - 1]
        );
    }

    // Exact validation: counts, sum of squared degrees, first
    // orthogonality, the regular character, the dimension column.
    let report = validate_table(&eng);
    println!("\nvalidation: passed = {}", report.passed);
    println!("  degrees: {:?}", report.degrees);
    println!("  sum of squared degrees: {} (= |G|)", report.sum_squares);
    for n in &report.notes {
        println!("  note: {}", n);
    }
}
