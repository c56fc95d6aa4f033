//! Optional larger-field validation: q = 7 takes minutes, so it is ignored
//! by default. Run with: cargo test --release -p gl3char -- --ignored

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;

use gl3char::engine::Engine;
use gl3char::group::group_order;

#[test]
#[ignore = "optional: takes minutes"]
fn table_validity_q7_sampled() {
    let eng = Engine::shared(7);
    let labels = eng.irr_labels().to_vec();
    assert_eq!(labels.len(), 336);
    assert_eq!(eng.class_count(), 336);
    let classes = eng.classes();
    let total: u64 = classes.list.iter().map(|d| d.size).sum();
    assert_eq!(total, group_order(7));
    let sum_sq: u64 = labels.iter().map(|l| l.degree(7) * l.degree(7)).sum();
    assert_eq!(sum_sq, group_order(7));

    // Orthogonality on a seeded sample of label pairs.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..labels.len() {
        pairs.push((i, i));
    }
    let mut offdiag: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|i| ((i + 1)..labels.len()).map(move |j| (i, j)))
        .collect();
    offdiag.shuffle(&mut rng);
    pairs.extend(offdiag.into_iter().take(400));
    for (i, j) in pairs {
        let ip = eng.inner(&eng.irr(&labels[i]), &eng.irr(&labels[j]));
        let expect = if i == j { BigInt::one() } else { BigInt::zero() };
        assert_eq!(ip.to_integer(), Some(expect), "{:?} vs {:?}", labels[i], labels[j]);
    }
}
