//! Gelfand-Graev inductions: a cuspidal times a principal-triple character
//! equals the sum of the classical and the generalized Gelfand-Graev
//! characters, verified exactly at q = 4.
//!
//! Run with: cargo run --release --example gelfand_graev

use gl3char::chartable::IrrLabel;
use gl3char::engine::Engine;
use gl3char::group::ClassLabel;
use gl3char::induction::{induce_gg, SubgroupSpec};
use gl3char::tensorlab::verify_prop1;

fn main() {
    let eng = Engine::for_q(4).unwrap();
    let t = eng.tower();

    // One explicit instance. The central character is the restriction of
    // the cuspidal parameter times the three principal parameters.
    let psi = 1u32; // cuspidal parameter exponent
    let tri = [0u32, 1, 2];
    let psic = gl3char::chars::MultChar::new(t, 3, psi);
    let central = psic
        .restrict(t)
        .product(t, &gl3char::chars::MultChar::new(t, 1, tri[0]))
        .product(t, &gl3char::chars::MultChar::new(t, 1, tri[1]))
        .product(t, &gl3char::chars::MultChar::new(t, 1, tri[2]));

    let lhs = eng
        .irr(&IrrLabel::Cuspidal { phi: psi })
        .product(&eng.irr(&IrrLabel::Triple { a: tri[0], b: tri[1], c: tri[2] }));

    let zn = SubgroupSpec::zn(t, central.exp, 1);
    let zn1 = SubgroupSpec::zn1(t, central.exp, 1);
    let classical = induce_gg(&eng, &zn).unwrap();
    let generalized = induce_gg(&eng, &zn1).unwrap();
    let rhs = classical.add(&generalized);

    println!("LHS degree: {}", lhs.degree_value());
    println!(
        "RHS degree: {} + {}",
        classical.degree_value(),
        generalized.degree_value()
    );
    println!("exact equality on all 60 classes: {}", lhs.eq_exact(&rhs));

    // The value on a Jordan(2,1) class is -(q-1)(2q+1) times the central
    // character; the generalized summand has no support on Jordan(3).
    for (i, d) in eng.classes().list.iter().enumerate() {
        match d.label {
            ClassLabel::Jordan21 { a } if a == 0 => {
                println!("value at the first Jordan(2,1) class: {}", rhs.values[i]);
            }
            ClassLabel::Jordan3 { .. } => {
                assert!(generalized.values[i].is_zero());
            }
            _ => {}
        }
    }

    // The full sweep: every cuspidal parameter, every distinct triple,
    // several nontrivial additive characters.
    let report = verify_prop1(&eng, &[1, 2, 3]).unwrap();
    println!(
        "full sweep: {} tuples, passed = {}",
        report.tuples_checked, report.passed
    );
}
