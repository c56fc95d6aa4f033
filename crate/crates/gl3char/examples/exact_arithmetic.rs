//! The exact arithmetic layer: the field tower with its discrete logs and
//! embeddings, and cyclotomic values with canonical-form equality.
//!
//! Run with: cargo run --release --example exact_arithmetic

use gl3char::cyclo::CycValue;
use gl3char::fields::{ExtElement, FieldTower};

fn main() {
    let t = FieldTower::make(3, 1).unwrap();
    println!("tower: {}", t.fingerprint());
    println!("generators: g1 = {}, g2 = tau, g3 = sigma", t.g1);

    // Norms land in the base field; the norm of a generator generates.
    let g2 = ExtElement::new(2, t.g2);
    println!("N_2(g2) = {} in F_3", t.norm(g2).index);

    // The multiplication-by-z matrix and its determinant.
    let z = ExtElement::new(3, t.g3);
    let m = t.embed_cubic(z).unwrap();
    println!("embed(sigma) rows: {:?}", m.row_major());
    println!("det = {} = N_3(sigma) = {}", m.det(&t), t.norm(z).index);

    // Exact cyclotomic arithmetic in Q(zeta_M), M = p(q^2-1)(q^2+q+1).
    let m = t.cyclotomic_modulus();
    println!("\ncyclotomic modulus M = {}", m);
    let mut s = CycValue::zero(m);
    for k in 0..m {
        s.add_assign(&CycValue::root_of_unity(m, k as i64));
    }
    println!("sum of all M-th roots of unity is zero: {}", s.is_zero());

    let z3 = CycValue::root_of_unity(m, (m / 3) as i64);
    let rel = CycValue::one(m).add(&z3).add(&z3.mul(&z3));
    println!("1 + zeta_3 + zeta_3^2 reduces to zero: {}", rel.is_zero());

    let v = CycValue::from_int(m, 312).exact_div_int(26).unwrap();
    println!("312 / 26 = {}", v);
    println!(
        "zeta^5 * zeta^{} = {}",
        m - 5,
        CycValue::root_of_unity(m, 5).mul(&CycValue::root_of_unity(m, -(5i64)))
    );
}
