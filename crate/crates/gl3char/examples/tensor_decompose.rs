//! Tensor products of irreducibles and their exact decomposition: the
//! cuspidal x cuspidal Clebsch-Gordan multiplicities.
//!
//! Run with: cargo run --release --example tensor_decompose

use gl3char::chartable::IrrLabel;
use gl3char::engine::Engine;
use gl3char::tensorlab::{decompose, verify_section4};

fn main() {
    let eng = Engine::for_q(3).unwrap();

    let phi = IrrLabel::Cuspidal { phi: 1 };
    let psi = IrrLabel::Cuspidal { phi: 2 };
    let prod = eng.irr(&phi).product(&eng.irr(&psi));
    println!(
        "Cusp(1) (x) Cusp(2) at q=3: degree {} = 16 * 16",
        prod.degree_value()
    );
    let dec = decompose(&eng, &prod).unwrap();
    println!("decomposition:");
    for (label, mult) in &dec.multiplicities {
        println!("  {:?} x{}", label, mult);
    }
    println!(
        "degree balance: sum mult*deg = {}",
        dec.degree_sum(eng.q())
    );

    // The closed forms for the linear, principal-triple and cuspidal
    // targets, checked over every cuspidal pair.
    let report = verify_section4(&eng).unwrap();
    println!(
        "\nclosed-form comparison over {} cuspidal pairs: passed = {}",
        report.tuples_checked, report.passed
    );
    for n in &report.notes {
        println!("  note: {}", n);
    }
}
