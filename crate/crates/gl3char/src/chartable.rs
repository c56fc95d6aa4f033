//! The eight families of irreducible characters of GL(3,F_q) as exact
//! class functions.
//!
//! Families, with their degrees:
//! * `Linear`      alpha(det), degree 1
//! * `Parabolic2`  degree q^2+q
//! * `Steinberg`   degree q^3
//! * `PairSmall`   degree q^2+q+1, parameters (alpha, beta), alpha != beta
//! * `PairBig`     degree q(q^2+q+1), same parameters
//! * `Triple`      degree (q+1)(q^2+q+1), three distinct degree-1 characters
//! * `Mixed`       degree q^3-1, (alpha, lambda) with lambda on F_{q^2}^x
//!                 not Frobenius-fixed
//! * `Cuspidal`    degree (q-1)(q^2-1), phi on F_{q^3}^x not Frobenius-fixed
//!
//! Degenerate parameter choices do not label irreducibles; they resolve into
//! signed combinations of generic labels via [`resolve_degenerate`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::chars::MultChar;
use crate::cyclo::CycValue;
use crate::engine::Engine;
use crate::fields::{ExtElement, FieldTower};
use crate::group::ClassLabel;
use crate::tensorlab::ClassFunction;
use crate::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IrrFamily {
    Linear,
    Parabolic2,
    Steinberg,
    PairSmall,
    PairBig,
    Triple,
    Mixed,
    Cuspidal,
}

/// Canonical label of an irreducible character. Multiplicative character
/// parameters are exponents against the tower generators: `a`, `b`, `c`
/// modulo q-1, `lam` modulo q^2-1, `phi` modulo q^3-1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum IrrLabel {
    Linear { a: u32 },
    Parabolic2 { a: u32 },
    Steinberg { a: u32 },
    PairSmall { a: u32, b: u32 },
    PairBig { a: u32, b: u32 },
    Triple { a: u32, b: u32, c: u32 },
    Mixed { a: u32, lam: u32 },
    Cuspidal { phi: u32 },
}

impl IrrLabel {
    pub fn family(&self) -> IrrFamily {
        match self {
            IrrLabel::Linear { .. } => IrrFamily::Linear,
            IrrLabel::Parabolic2 { .. } => IrrFamily::Parabolic2,
            IrrLabel::Steinberg { .. } => IrrFamily::Steinberg,
            IrrLabel::PairSmall { .. } => IrrFamily::PairSmall,
            IrrLabel::PairBig { .. } => IrrFamily::PairBig,
            IrrLabel::Triple { .. } => IrrFamily::Triple,
            IrrLabel::Mixed { .. } => IrrFamily::Mixed,
            IrrLabel::Cuspidal { .. } => IrrFamily::Cuspidal,
        }
    }

    pub fn degree(&self, q: u32) -> u64 {
        let q = q as u64;
        match self.family() {
            IrrFamily::Linear => 1,
            IrrFamily::Parabolic2 => q * q + q,
            IrrFamily::Steinberg => q * q * q,
            IrrFamily::PairSmall => q * q + q + 1,
            IrrFamily::PairBig => q * (q * q + q + 1),
            IrrFamily::Triple => (q + 1) * (q * q + q + 1),
            IrrFamily::Mixed => q * q * q - 1,
            IrrFamily::Cuspidal => (q - 1) * (q * q - 1),
        }
    }

    /// Reduce exponents and normalize orbit/set parameters, without
    /// checking genericity.
    pub fn canonicalize(&self, t: &FieldTower) -> IrrLabel {
        let m1 = t.q - 1;
        let m2 = t.unit_order(2);
        let m3 = t.unit_order(3);
        match *self {
            IrrLabel::Linear { a } => IrrLabel::Linear { a: a % m1 },
            IrrLabel::Parabolic2 { a } => IrrLabel::Parabolic2 { a: a % m1 },
            IrrLabel::Steinberg { a } => IrrLabel::Steinberg { a: a % m1 },
            IrrLabel::PairSmall { a, b } => IrrLabel::PairSmall { a: a % m1, b: b % m1 },
            IrrLabel::PairBig { a, b } => IrrLabel::PairBig { a: a % m1, b: b % m1 },
            IrrLabel::Triple { a, b, c } => {
                let mut v = [a % m1, b % m1, c % m1];
                v.sort_unstable();
                IrrLabel::Triple { a: v[0], b: v[1], c: v[2] }
            }
            IrrLabel::Mixed { a, lam } => {
                let lam = lam % m2;
                let lam = lam.min(lam * t.q % m2);
                IrrLabel::Mixed { a: a % m1, lam }
            }
            IrrLabel::Cuspidal { phi } => {
                let phi = phi % m3;
                let orbit = [phi, (phi as u64 * t.q as u64 % m3 as u64) as u32, (phi as u64 * t.q as u64 * t.q as u64 % m3 as u64) as u32];
                IrrLabel::Cuspidal { phi: *orbit.iter().min().unwrap() }
            }
        }
    }

    /// Whether the parameters are in general position, i.e. the label names
    /// an irreducible character.
    pub fn is_generic(&self, t: &FieldTower) -> bool {
        let m1 = t.q - 1;
        match *self {
            IrrLabel::Linear { .. } | IrrLabel::Parabolic2 { .. } | IrrLabel::Steinberg { .. } => true,
            IrrLabel::PairSmall { a, b } | IrrLabel::PairBig { a, b } => a % m1 != b % m1,
            IrrLabel::Triple { a, b, c } => {
                let (a, b, c) = (a % m1, b % m1, c % m1);
                a != b && b != c && a != c
            }
            IrrLabel::Mixed { lam, .. } => !MultChar::new(t, 2, lam).is_galois_fixed(t),
            IrrLabel::Cuspidal { phi } => !MultChar::new(t, 3, phi).is_galois_fixed(t),
        }
    }
}

/// A formal integer combination of irreducible labels.
#[derive(Clone, Debug, Default)]
pub struct VirtualCharacter {
    pub terms: Vec<(IrrLabel, i64)>,
}

impl VirtualCharacter {
    pub fn single(label: IrrLabel) -> VirtualCharacter {
        VirtualCharacter { terms: vec![(label, 1)] }
    }

    pub fn push(&mut self, label: IrrLabel, coeff: i64) {
        self.terms.push((label, coeff));
    }

    /// Evaluate as an exact class function.
    pub fn class_function(&self, eng: &Engine) -> ClassFunction {
        let mut out = ClassFunction::zero(eng);
        for &(label, coeff) in &self.terms {
            let cf = eng.irr(&label);
            out.add_scaled_assign(&cf, coeff);
        }
        out
    }

    pub fn is_genuine(&self) -> bool {
        self.terms.iter().all(|&(_, c)| c >= 0)
    }
}

/// All irreducible labels for this q, in canonical order.
/// The list length always equals the class count q^3 - q.
pub fn all_irreducibles(t: &FieldTower) -> Vec<IrrLabel> {
    let q = t.q;
    let m1 = q - 1;
    let mut out = Vec::new();
    for a in 0..m1 {
        out.push(IrrLabel::Linear { a });
    }
    for a in 0..m1 {
        out.push(IrrLabel::Parabolic2 { a });
    }
    for a in 0..m1 {
        out.push(IrrLabel::Steinberg { a });
    }
    for a in 0..m1 {
        for b in 0..m1 {
            if a != b {
                out.push(IrrLabel::PairSmall { a, b });
            }
        }
    }
    for a in 0..m1 {
        for b in 0..m1 {
            if a != b {
                out.push(IrrLabel::PairBig { a, b });
            }
        }
    }
    for a in 0..m1 {
        for b in (a + 1)..m1 {
            for c in (b + 1)..m1 {
                out.push(IrrLabel::Triple { a, b, c });
            }
        }
    }
    // Mixed: lambda ranges over canonical representatives of the
    // (q^2-q)/2 Frobenius orbits of size two.
    let m2 = t.unit_order(2);
    let mut lams: Vec<u32> = Vec::new();
    for lam in 0..m2 {
        let twist = (lam as u64 * q as u64 % m2 as u64) as u32;
        if twist != lam && lam < twist {
            lams.push(lam);
        }
    }
    for a in 0..m1 {
        for &lam in &lams {
            out.push(IrrLabel::Mixed { a, lam });
        }
    }
    // Cuspidal: canonical representatives of free Galois orbits of size 3.
    let m3 = t.unit_order(3);
    for phi in 0..m3 {
        let f1 = (phi as u64 * q as u64 % m3 as u64) as u32;
        let f2 = (f1 as u64 * q as u64 % m3 as u64) as u32;
        if f1 != phi && phi < f1 && phi < f2 {
            out.push(IrrLabel::Cuspidal { phi });
        }
    }
    out
}

/// Exact table entry chi_label(class). Errors on non-generic labels;
/// callers holding degenerate parameters must resolve them first.
pub fn chi_value(t: &FieldTower, m: u32, label: &IrrLabel, class: &ClassLabel) -> Result<CycValue, Error> {
    if !label.is_generic(t) {
        return Err(Error::DegenerateLabel(format!("{:?}", label)));
    }
    Ok(eval_raw(t, m, label, class))
}

/// The raw table formula for a family at given (possibly degenerate)
/// parameters. Only meaningful to callers probing the formulas themselves;
/// everything else goes through [`chi_value`].
pub fn eval_raw(t: &FieldTower, m: u32, label: &IrrLabel, class: &ClassLabel) -> CycValue {
    let q = t.q as i64;
    let e1 = |k: u32| ExtElement::new(1, t.exp(1, k));
    let chr = |e: u32| MultChar::new(t, 1, e);

    // Class parameters as field elements.
    match *label {
        IrrLabel::Linear { a } => {
            let alpha = chr(a);
            linear_value(t, m, &alpha, class)
        }
        IrrLabel::Parabolic2 { a } => {
            let alpha = chr(a);
            let det = linear_value(t, m, &alpha, class);
            let scale: i64 = match class {
                ClassLabel::Central { .. } => q * q + q,
                ClassLabel::Jordan21 { .. } => q,
                ClassLabel::Jordan3 { .. } => 0,
                ClassLabel::Split2 { .. } => q + 1,
                ClassLabel::Split2Jordan { .. } => 1,
                ClassLabel::Split3 { .. } => 2,
                ClassLabel::Quad { .. } => 0,
                ClassLabel::Cubic { .. } => -1,
            };
            det.scaled_int(scale)
        }
        IrrLabel::Steinberg { a } => {
            let alpha = chr(a);
            let det = linear_value(t, m, &alpha, class);
            let scale: i64 = match class {
                ClassLabel::Central { .. } => q * q * q,
                ClassLabel::Jordan21 { .. } => 0,
                ClassLabel::Jordan3 { .. } => 0,
                ClassLabel::Split2 { .. } => q,
                ClassLabel::Split2Jordan { .. } => 0,
                ClassLabel::Split3 { .. } => 1,
                ClassLabel::Quad { .. } => -1,
                ClassLabel::Cubic { .. } => 1,
            };
            det.scaled_int(scale)
        }
        IrrLabel::PairSmall { a, b } | IrrLabel::PairBig { a, b } => {
            let big = matches!(label, IrrLabel::PairBig { .. });
            let alpha = chr(a);
            let beta = chr(b);
            let val = |x: ExtElement, c: &MultChar| c.value(t, m, x);
            match *class {
                ClassLabel::Central { a: ca } | ClassLabel::Jordan21 { a: ca } | ClassLabel::Jordan3 { a: ca } => {
                    let x = e1(ca);
                    let ab2 = val(x, &alpha).mul(&val(x, &beta)).mul(&val(x, &beta));
                    let scale: i64 = match (class, big) {
                        (ClassLabel::Central { .. }, false) => q * q + q + 1,
                        (ClassLabel::Central { .. }, true) => q * (q * q + q + 1),
                        (ClassLabel::Jordan21 { .. }, false) => q + 1,
                        (ClassLabel::Jordan21 { .. }, true) => q,
                        (ClassLabel::Jordan3 { .. }, false) => 1,
                        (ClassLabel::Jordan3 { .. }, true) => 0,
                        _ => unreachable!(),
                    };
                    ab2.scaled_int(scale)
                }
                ClassLabel::Split2 { a: ca, b: cb } | ClassLabel::Split2Jordan { a: ca, b: cb } => {
                    let xa = e1(ca);
                    let xb = e1(cb);
                    let xab = ExtElement::new(1, t.mul(xa.index as u8, xb.index as u8) as u16);
                    // alpha(a) beta(ab) and beta^2(a) alpha(b)
                    let t1 = val(xa, &alpha).mul(&val(xab, &beta));
                    let t2 = val(xa, &beta).mul(&val(xa, &beta)).mul(&val(xb, &alpha));
                    let jordan = matches!(class, ClassLabel::Split2Jordan { .. });
                    let (s1, s2): (i64, i64) = match (jordan, big) {
                        (false, false) => (q + 1, 1),
                        (false, true) => (q + 1, q),
                        (true, false) => (1, 1),
                        (true, true) => (1, 0),
                    };
                    t1.scaled_int(s1).add(&t2.scaled_int(s2))
                }
                ClassLabel::Split3 { a: ca, b: cb, c: cc } => {
                    // sum over the choice of distinguished eigenvalue
                    let xs = [e1(ca), e1(cb), e1(cc)];
                    let mut s = CycValue::zero(m);
                    for i in 0..3 {
                        let x = xs[i];
                        let y = xs[(i + 1) % 3];
                        let z = xs[(i + 2) % 3];
                        let yz = ExtElement::new(1, t.mul(y.index as u8, z.index as u8) as u16);
                        s.add_assign(&val(x, &alpha).mul(&val(yz, &beta)));
                    }
                    s
                }
                ClassLabel::Quad { kappa, a: ca } => {
                    let nk = t.norm(ExtElement::new(2, t.exp(2, kappa)));
                    let v = val(e1(ca), &alpha).mul(&val(nk, &beta));
                    if big {
                        v.neg()
                    } else {
                        v
                    }
                }
                ClassLabel::Cubic { .. } => CycValue::zero(m),
            }
        }
        IrrLabel::Triple { a, b, c } => {
            let chs = [chr(a), chr(b), chr(c)];
            let val = |x: ExtElement, ch: &MultChar| ch.value(t, m, x);
            match *class {
                ClassLabel::Central { a: ca } | ClassLabel::Jordan21 { a: ca } | ClassLabel::Jordan3 { a: ca } => {
                    let x = e1(ca);
                    let prod = val(x, &chs[0]).mul(&val(x, &chs[1])).mul(&val(x, &chs[2]));
                    let scale: i64 = match class {
                        ClassLabel::Central { .. } => (q + 1) * (q * q + q + 1),
                        ClassLabel::Jordan21 { .. } => 2 * q + 1,
                        _ => 1,
                    };
                    prod.scaled_int(scale)
                }
                ClassLabel::Split2 { a: ca, b: cb } | ClassLabel::Split2Jordan { a: ca, b: cb } => {
                    let xa = e1(ca);
                    let xb = e1(cb);
                    // sum over the choice of the character at the simple
                    // eigenvalue: (chi_i chi_j)(a) chi_k(b)
                    let mut s = CycValue::zero(m);
                    for k in 0..3 {
                        let i = (k + 1) % 3;
                        let j = (k + 2) % 3;
                        s.add_assign(
                            &val(xa, &chs[i]).mul(&val(xa, &chs[j])).mul(&val(xb, &chs[k])),
                        );
                    }
                    if matches!(class, ClassLabel::Split2 { .. }) {
                        s.scaled_int(q + 1)
                    } else {
                        s
                    }
                }
                ClassLabel::Split3 { a: ca, b: cb, c: cc } => {
                    // full symmetric orbit: six permutation assignments
                    let xs = [e1(ca), e1(cb), e1(cc)];
                    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
                    let mut s = CycValue::zero(m);
                    for p in perms {
                        s.add_assign(
                            &val(xs[p[0]], &chs[0])
                                .mul(&val(xs[p[1]], &chs[1]))
                                .mul(&val(xs[p[2]], &chs[2])),
                        );
                    }
                    s
                }
                ClassLabel::Quad { .. } | ClassLabel::Cubic { .. } => CycValue::zero(m),
            }
        }
        IrrLabel::Mixed { a, lam } => {
            let alpha = chr(a);
            let lamc = MultChar::new(t, 2, lam);
            match *class {
                ClassLabel::Central { a: ca } | ClassLabel::Jordan21 { a: ca } | ClassLabel::Jordan3 { a: ca } => {
                    let v = alpha.value(t, m, e1(ca)).mul(&lamc.value_base(t, m, t.exp(1, ca) as u8));
                    let scale: i64 = match class {
                        ClassLabel::Central { .. } => q * q * q - 1,
                        _ => -1,
                    };
                    v.scaled_int(scale)
                }
                ClassLabel::Split2 { a: ca, b: cb } | ClassLabel::Split2Jordan { a: ca, b: cb } => {
                    let v = alpha
                        .value(t, m, e1(cb))
                        .mul(&lamc.value_base(t, m, t.exp(1, ca) as u8));
                    let scale: i64 = if matches!(class, ClassLabel::Split2 { .. }) { q - 1 } else { -1 };
                    v.scaled_int(scale)
                }
                ClassLabel::Split3 { .. } => CycValue::zero(m),
                ClassLabel::Quad { kappa, a: ca } => {
                    let k = ExtElement::new(2, t.exp(2, kappa));
                    let kq = t.frobenius(k, 1);
                    let s = lamc.value(t, m, k).add(&lamc.value(t, m, kq));
                    alpha.value(t, m, e1(ca)).mul(&s).neg()
                }
                ClassLabel::Cubic { .. } => CycValue::zero(m),
            }
        }
        IrrLabel::Cuspidal { phi } => {
            let phic = MultChar::new(t, 3, phi);
            match *class {
                ClassLabel::Central { a: ca } | ClassLabel::Jordan21 { a: ca } | ClassLabel::Jordan3 { a: ca } => {
                    let v = phic.value_base(t, m, t.exp(1, ca) as u8);
                    let scale: i64 = match class {
                        ClassLabel::Central { .. } => (q - 1) * (q * q - 1),
                        ClassLabel::Jordan21 { .. } => -(q - 1),
                        _ => 1,
                    };
                    v.scaled_int(scale)
                }
                ClassLabel::Cubic { z } => {
                    let ze = ExtElement::new(3, t.exp(3, z));
                    let zq = t.frobenius(ze, 1);
                    let zq2 = t.frobenius(ze, 2);
                    phic.value(t, m, ze)
                        .add(&phic.value(t, m, zq))
                        .add(&phic.value(t, m, zq2))
                }
                _ => CycValue::zero(m),
            }
        }
    }
}

/// alpha(det g) on each class.
fn linear_value(t: &FieldTower, m: u32, alpha: &MultChar, class: &ClassLabel) -> CycValue {
    let det_dlog: u32 = match *class {
        ClassLabel::Central { a } | ClassLabel::Jordan21 { a } | ClassLabel::Jordan3 { a } => 3 * a,
        ClassLabel::Split2 { a, b } | ClassLabel::Split2Jordan { a, b } => 2 * a + b,
        ClassLabel::Split3 { a, b, c } => a + b + c,
        ClassLabel::Quad { kappa, a } => {
            let nk = t.norm(ExtElement::new(2, t.exp(2, kappa)));
            t.dlog(1, nk.index).unwrap() + a
        }
        ClassLabel::Cubic { z } => {
            let nz = t.norm(ExtElement::new(3, t.exp(3, z)));
            t.dlog(1, nz.index).unwrap()
        }
    };
    alpha.value(t, m, ExtElement::new(1, t.exp(1, det_dlog % (t.q - 1))))
}

/// Resolve a (possibly) degenerate label into a signed combination of
/// generic labels; generic labels pass through as singletons.
pub fn resolve_degenerate(t: &FieldTower, label: &IrrLabel) -> Result<VirtualCharacter, Error> {
    let label = label.canonicalize(t);
    if label.is_generic(t) {
        return Ok(VirtualCharacter::single(label));
    }
    let m1 = t.q - 1;
    let t2 = t.q + 1;
    let t3 = t.q * t.q + t.q + 1;
    let mut out = VirtualCharacter::default();
    match label {
        IrrLabel::PairSmall { a, .. } => {
            // chi_{alpha,alpha}: Linear + Parabolic2
            out.push(IrrLabel::Linear { a }, 1);
            out.push(IrrLabel::Parabolic2 { a }, 1);
        }
        IrrLabel::PairBig { a, .. } => {
            // chi_{alpha,alpha}: Steinberg + Parabolic2
            out.push(IrrLabel::Steinberg { a }, 1);
            out.push(IrrLabel::Parabolic2 { a }, 1);
        }
        IrrLabel::Triple { a, b, c } => {
            if a == b && b == c {
                out.push(IrrLabel::Linear { a }, 1);
                out.push(IrrLabel::Parabolic2 { a }, 2);
                out.push(IrrLabel::Steinberg { a }, 1);
            } else {
                // exactly two coincide: the pair (single, repeated)
                let (single, repeated) = if a == b {
                    (c, a)
                } else if b == c {
                    (a, b)
                } else {
                    (b, a)
                };
                out.push(IrrLabel::PairSmall { a: single, b: repeated }, 1);
                out.push(IrrLabel::PairBig { a: single, b: repeated }, 1);
            }
        }
        IrrLabel::Mixed { a, lam } => {
            // lambda Frobenius-fixed: lambda = beta o N_2.
            if lam % t2 != 0 {
                return Err(Error::UnresolvedDegenerate(format!("{:?}", label)));
            }
            let k = lam / t2;
            let beta = (k as u64 * t.u2 as u64 % m1 as u64) as u32;
            if beta == a {
                out.push(IrrLabel::Steinberg { a }, 1);
                out.push(IrrLabel::Linear { a }, -1);
            } else {
                out.push(IrrLabel::PairBig { a, b: beta }, 1);
                out.push(IrrLabel::PairSmall { a, b: beta }, -1);
            }
        }
        IrrLabel::Cuspidal { phi } => {
            // phi Frobenius-fixed: phi = alpha o N_3.
            if phi % t3 != 0 {
                return Err(Error::UnresolvedDegenerate(format!("{:?}", label)));
            }
            let k = phi / t3;
            let a = (k as u64 * t.u3 as u64 % m1 as u64) as u32;
            out.push(IrrLabel::Linear { a }, 1);
            out.push(IrrLabel::Parabolic2 { a }, -1);
            out.push(IrrLabel::Steinberg { a }, 1);
        }
        _ => unreachable!("one-parameter families are always generic"),
    }
    Ok(out)
}

/// Table-level validation report.
#[derive(Debug, Serialize)]
pub struct TableReport {
    pub q: u32,
    pub class_count: usize,
    pub irr_count: usize,
    pub count_ok: bool,
    pub degrees: Vec<u64>,
    pub sum_squares: u64,
    pub sum_squares_ok: bool,
    pub orthogonality_failures: Vec<(IrrLabel, IrrLabel)>,
    pub regular_ok: bool,
    pub dimension_column_ok: bool,
    pub notes: Vec<String>,
    pub passed: bool,
}

/// Run the full battery: label count, degree bookkeeping, exact first
/// orthogonality, the regular character identity, and the dimension column.
pub fn validate_table(eng: &Engine) -> TableReport {
    let q = eng.q();
    let labels = eng.irr_labels().to_vec();
    let classes = eng.classes();
    let class_count = classes.count();
    let count_ok = labels.len() == class_count;

    let mut degrees: Vec<u64> = labels.iter().map(|l| l.degree(q)).collect();
    degrees.sort_unstable();
    let sum_squares: u64 = degrees.iter().map(|d| d * d).sum();
    let order = crate::group::group_order(q);
    let sum_squares_ok = sum_squares == order;

    // Dimension column: value at the identity class equals the degree.
    let id_idx = classes.index_of(&ClassLabel::Central { a: 0 });
    let mut dimension_column_ok = true;
    for l in &labels {
        let v = eng.irr(l).values[id_idx].clone();
        if v.to_integer() != Some(BigInt::from(l.degree(q))) {
            dimension_column_ok = false;
        }
    }

    // Regular character: sum d_i chi_i = |G| at the identity, 0 elsewhere.
    let mut regular_ok = true;
    {
        let mut reg = ClassFunction::zero(eng);
        for l in &labels {
            reg.add_scaled_assign(&eng.irr(l), l.degree(q) as i64);
        }
        for (ci, v) in reg.values.iter().enumerate() {
            let expect = if ci == id_idx {
                BigInt::from(order)
            } else {
                BigInt::zero()
            };
            if v.to_integer() != Some(expect) {
                regular_ok = false;
            }
        }
    }

    // First orthogonality, exact, all pairs.
    let pairs: Vec<(usize, usize)> = (0..labels.len())
        .flat_map(|i| (i..labels.len()).map(move |j| (i, j)))
        .collect();
    let orthogonality_failures: Vec<(IrrLabel, IrrLabel)> = pairs
        .par_iter()
        .filter_map(|&(i, j)| {
            let fi = eng.irr(&labels[i]);
            let fj = eng.irr(&labels[j]);
            let ip = eng.inner(&fi, &fj);
            let expect = if i == j { BigInt::one() } else { BigInt::zero() };
            if ip.to_integer() == Some(expect) {
                None
            } else {
                Some((labels[i], labels[j]))
            }
        })
        .collect();

    let notes = vec![format!(
        "mixed-series label count uses q(q-1)^2/2 = {}, the value forced by \
         sum-of-squares = |G| and label count = q^3 - q",
        q as u64 * ((q - 1) as u64).pow(2) / 2
    )];

    let passed = count_ok
        && sum_squares_ok
        && orthogonality_failures.is_empty()
        && regular_ok
        && dimension_column_ok;
    TableReport {
        q,
        class_count,
        irr_count: labels.len(),
        count_ok,
        degrees,
        sum_squares,
        sum_squares_ok,
        orthogonality_failures,
        regular_ok,
        dimension_column_ok,
        notes,
        passed,
    }
}

/// Decomposition of a class function into irreducibles.
#[derive(Clone, Debug, Default)]
pub struct Decomposition {
    pub multiplicities: BTreeMap<IrrLabel, BigInt>,
}

impl Decomposition {
    pub fn degree_sum(&self, q: u32) -> BigInt {
        let mut s = BigInt::zero();
        for (l, m) in &self.multiplicities {
            s += m * BigInt::from(l.degree(q));
        }
        s
    }

    pub fn all_nonnegative(&self) -> bool {
        self.multiplicities.values().all(|m| !m.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(q: u32) -> FieldTower {
        let (p, n) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            _ => (q, 1),
        };
        FieldTower::make(p, n).unwrap()
    }

    #[test]
    fn label_counts() {
        for (q, expect) in [(2u32, 6usize), (3, 24), (4, 60), (5, 120)] {
            let t = tower(q);
            let labels = all_irreducibles(&t);
            assert_eq!(labels.len(), expect);
            // Canonical and generic.
            for l in &labels {
                assert_eq!(l.canonicalize(&t), *l);
                assert!(l.is_generic(&t));
            }
        }
    }

    #[test]
    fn q2_degree_multiset() {
        let t = tower(2);
        let mut degs: Vec<u64> = all_irreducibles(&t).iter().map(|l| l.degree(2)).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 3, 3, 6, 7, 8]);
    }

    #[test]
    fn spot_table_values() {
        let t = tower(3);
        let m = t.cyclotomic_modulus();
        // Steinberg vanishes on the Jordan(2,1) class.
        let v = chi_value(&t, m, &IrrLabel::Steinberg { a: 0 }, &ClassLabel::Jordan21 { a: 0 }).unwrap();
        assert!(v.is_zero());
        // Trivial character is 1 everywhere.
        let cd = crate::group::ClassData::build(&t);
        for d in &cd.list {
            let v = chi_value(&t, m, &IrrLabel::Linear { a: 0 }, &d.label).unwrap();
            assert_eq!(v.to_integer(), Some(1.into()));
        }
        // Cuspidal vanishes on split classes.
        let v = chi_value(&t, m, &IrrLabel::Cuspidal { phi: 1 }, &ClassLabel::Split2 { a: 0, b: 1 }).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn weyl_galois_invariance_of_values() {
        // Non-canonical parameter choices evaluate identically.
        for q in [3u32, 4] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            let cd = crate::group::ClassData::build(&t);
            let m2 = t.unit_order(2);
            let m3 = t.unit_order(3);
            // Mixed(a, lam) = Mixed(a, lam*q)
            let lam = 1u32;
            let lam_twist = lam * q % m2;
            for d in &cd.list {
                let v1 = eval_raw(&t, m, &IrrLabel::Mixed { a: 1, lam }, &d.label);
                let v2 = eval_raw(&t, m, &IrrLabel::Mixed { a: 1, lam: lam_twist }, &d.label);
                assert_eq!(v1, v2);
            }
            // Cuspidal(phi) = Cuspidal(phi*q)
            let phi = 1u32;
            let phi_twist = phi * q % m3;
            for d in &cd.list {
                let v1 = eval_raw(&t, m, &IrrLabel::Cuspidal { phi }, &d.label);
                let v2 = eval_raw(&t, m, &IrrLabel::Cuspidal { phi: phi_twist }, &d.label);
                assert_eq!(v1, v2);
            }
            // Triple invariant under permutations.
            if q >= 4 {
                for d in &cd.list {
                    let v1 = eval_raw(&t, m, &IrrLabel::Triple { a: 0, b: 1, c: 2 }, &d.label);
                    let v2 = eval_raw(&t, m, &IrrLabel::Triple { a: 2, b: 0, c: 1 }, &d.label);
                    assert_eq!(v1, v2);
                }
            }
        }
    }

    #[test]
    fn chi_value_rejects_degenerate() {
        let t = tower(3);
        let m = t.cyclotomic_modulus();
        assert!(chi_value(&t, m, &IrrLabel::PairSmall { a: 1, b: 1 }, &ClassLabel::Central { a: 0 }).is_err());
    }

    #[test]
    fn degenerate_resolutions_shape() {
        let t = tower(4);
        // Cuspidal(alpha o N_3) -> Linear - Parabolic2 + Steinberg.
        let alpha = MultChar::new(&t, 1, 1);
        let infl = alpha.inflate_norm(&t, 3);
        let vc = resolve_degenerate(&t, &IrrLabel::Cuspidal { phi: infl.exp }).unwrap();
        let coeffs: Vec<i64> = vc.terms.iter().map(|&(_, c)| c).collect();
        assert_eq!(coeffs, vec![1, -1, 1]);
        assert!(matches!(vc.terms[0].0, IrrLabel::Linear { a: 1 }));
        // Triple(a,a,a) -> Linear + 2 Parabolic2 + Steinberg.
        let vc = resolve_degenerate(&t, &IrrLabel::Triple { a: 2, b: 2, c: 2 }).unwrap();
        assert_eq!(vc.terms.len(), 3);
        assert_eq!(vc.terms[1].1, 2);
        // Generic passes through.
        let vc = resolve_degenerate(&t, &IrrLabel::Cuspidal { phi: 1 }).unwrap();
        assert_eq!(vc.terms, vec![(IrrLabel::Cuspidal { phi: 1 }, 1)]);
    }
}
