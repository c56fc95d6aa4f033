//! Floating-point backend: the character table evaluated independently in
//! complex doubles, as a cross-implementation oracle for the exact
//! cyclotomic arithmetic. The formulas are written out a second time here
//! on purpose; only the class parameters and discrete logs are shared.

use num_complex::Complex64;

use crate::chartable::IrrLabel;
use crate::engine::Engine;
use crate::fields::{ExtElement, FieldTower};
use crate::group::ClassLabel;

fn root(order: u32, k: u64) -> Complex64 {
    let ang = 2.0 * std::f64::consts::PI * (k % order as u64) as f64 / order as f64;
    Complex64::new(ang.cos(), ang.sin())
}

/// chi(x) for a multiplicative character given by exponent `e` on the
/// degree-d unit group, evaluated at the element of discrete log `dl`.
fn mchar(t: &FieldTower, d: u8, e: u32, dl: u32) -> Complex64 {
    let order = t.unit_order(d);
    root(order, e as u64 * dl as u64)
}

fn dlog_of(t: &FieldTower, d: u8, idx: u16) -> u32 {
    t.dlog(d, idx).expect("nonzero")
}

/// Character table entry in complex doubles.
pub fn chi_value_f64(t: &FieldTower, label: &IrrLabel, class: &ClassLabel) -> Complex64 {
    let q = t.q as f64;
    let m1 = t.q - 1;
    // det dlog of the class representative
    let det_dlog: u32 = match *class {
        ClassLabel::Central { a } | ClassLabel::Jordan21 { a } | ClassLabel::Jordan3 { a } => {
            3 * a % m1
        }
        ClassLabel::Split2 { a, b } | ClassLabel::Split2Jordan { a, b } => (2 * a + b) % m1,
        ClassLabel::Split3 { a, b, c } => (a + b + c) % m1,
        ClassLabel::Quad { kappa, a } => {
            let nk = t.norm(ExtElement::new(2, t.exp(2, kappa)));
            (dlog_of(t, 1, nk.index) + a) % m1
        }
        ClassLabel::Cubic { z } => {
            let nz = t.norm(ExtElement::new(3, t.exp(3, z)));
            dlog_of(t, 1, nz.index)
        }
    };
    // dlog of a base-field element inside an extension
    let emb = |d: u8, a_dlog: u32| dlog_of(t, d, t.embed(d, t.exp(1, a_dlog) as u8));

    match *label {
        IrrLabel::Linear { a } => mchar(t, 1, a, det_dlog),
        IrrLabel::Parabolic2 { a } => {
            let scale = match class {
                ClassLabel::Central { .. } => q * q + q,
                ClassLabel::Jordan21 { .. } => q,
                ClassLabel::Jordan3 { .. } => 0.0,
                ClassLabel::Split2 { .. } => q + 1.0,
                ClassLabel::Split2Jordan { .. } => 1.0,
                ClassLabel::Split3 { .. } => 2.0,
                ClassLabel::Quad { .. } => 0.0,
                ClassLabel::Cubic { .. } => -1.0,
            };
            mchar(t, 1, a, det_dlog) * scale
        }
        IrrLabel::Steinberg { a } => {
            let scale = match class {
                ClassLabel::Central { .. } => q * q * q,
                ClassLabel::Split2 { .. } => q,
                ClassLabel::Split3 { .. } | ClassLabel::Cubic { .. } => 1.0,
                ClassLabel::Quad { .. } => -1.0,
                _ => 0.0,
            };
            mchar(t, 1, a, det_dlog) * scale
        }
        IrrLabel::PairSmall { a: ea, b: eb } | IrrLabel::PairBig { a: ea, b: eb } => {
            let big = matches!(label, IrrLabel::PairBig { .. });
            match *class {
                ClassLabel::Central { a } | ClassLabel::Jordan21 { a } | ClassLabel::Jordan3 { a } => {
                    let v = mchar(t, 1, ea, a) * mchar(t, 1, 2 * eb % m1.max(1), a);
                    let scale = match (class, big) {
                        (ClassLabel::Central { .. }, false) => q * q + q + 1.0,
                        (ClassLabel::Central { .. }, true) => q * (q * q + q + 1.0),
                        (ClassLabel::Jordan21 { .. }, false) => q + 1.0,
                        (ClassLabel::Jordan21 { .. }, true) => q,
                        (ClassLabel::Jordan3 { .. }, false) => 1.0,
                        _ => 0.0,
                    };
                    v * scale
                }
                ClassLabel::Split2 { a, b } | ClassLabel::Split2Jordan { a, b } => {
                    let t1 = mchar(t, 1, ea, a) * mchar(t, 1, eb, (a + b) % m1);
                    let t2 = mchar(t, 1, 2 * eb % m1.max(1), a) * mchar(t, 1, ea, b);
                    let jordan = matches!(class, ClassLabel::Split2Jordan { .. });
                    let (s1, s2) = match (jordan, big) {
                        (false, false) => (q + 1.0, 1.0),
                        (false, true) => (q + 1.0, q),
                        (true, false) => (1.0, 1.0),
                        (true, true) => (1.0, 0.0),
                    };
                    t1 * s1 + t2 * s2
                }
                ClassLabel::Split3 { a, b, c } => {
                    let xs = [a, b, c];
                    let mut s = Complex64::new(0.0, 0.0);
                    for i in 0..3 {
                        let x = xs[i];
                        let yz = (xs[(i + 1) % 3] + xs[(i + 2) % 3]) % m1;
                        s += mchar(t, 1, ea, x) * mchar(t, 1, eb, yz);
                    }
                    s
                }
                ClassLabel::Quad { kappa, a } => {
                    let nk = t.norm(ExtElement::new(2, t.exp(2, kappa)));
                    let v = mchar(t, 1, ea, a) * mchar(t, 1, eb, dlog_of(t, 1, nk.index));
                    if big {
                        -v
                    } else {
                        v
                    }
                }
                ClassLabel::Cubic { .. } => Complex64::new(0.0, 0.0),
            }
        }
        IrrLabel::Triple { a: e1, b: e2, c: e3 } => {
            let es = [e1, e2, e3];
            match *class {
                ClassLabel::Central { a } | ClassLabel::Jordan21 { a } | ClassLabel::Jordan3 { a } => {
                    let v = mchar(t, 1, (e1 + e2 + e3) % m1.max(1), a);
                    let scale = match class {
                        ClassLabel::Central { .. } => (q + 1.0) * (q * q + q + 1.0),
                        ClassLabel::Jordan21 { .. } => 2.0 * q + 1.0,
                        _ => 1.0,
                    };
                    v * scale
                }
                ClassLabel::Split2 { a, b } | ClassLabel::Split2Jordan { a, b } => {
                    let mut s = Complex64::new(0.0, 0.0);
                    for k in 0..3 {
                        let i = (k + 1) % 3;
                        let j = (k + 2) % 3;
                        s += mchar(t, 1, (es[i] + es[j]) % m1, a) * mchar(t, 1, es[k], b);
                    }
                    if matches!(class, ClassLabel::Split2 { .. }) {
                        s * (q + 1.0)
                    } else {
                        s
                    }
                }
                ClassLabel::Split3 { a, b, c } => {
                    let xs = [a, b, c];
                    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
                    let mut s = Complex64::new(0.0, 0.0);
                    for p in perms {
                        s += mchar(t, 1, e1, xs[p[0]])
                            * mchar(t, 1, e2, xs[p[1]])
                            * mchar(t, 1, e3, xs[p[2]]);
                    }
                    s
                }
                _ => Complex64::new(0.0, 0.0),
            }
        }
        IrrLabel::Mixed { a: ea, lam } => match *class {
            ClassLabel::Central { a } | ClassLabel::Jordan21 { a } | ClassLabel::Jordan3 { a } => {
                let v = mchar(t, 1, ea, a) * mchar(t, 2, lam, emb(2, a));
                let scale = match class {
                    ClassLabel::Central { .. } => q * q * q - 1.0,
                    _ => -1.0,
                };
                v * scale
            }
            ClassLabel::Split2 { a, b } | ClassLabel::Split2Jordan { a, b } => {
                let v = mchar(t, 1, ea, b) * mchar(t, 2, lam, emb(2, a));
                let scale = if matches!(class, ClassLabel::Split2 { .. }) {
                    q - 1.0
                } else {
                    -1.0
                };
                v * scale
            }
            ClassLabel::Quad { kappa, a } => {
                let m2 = t.unit_order(2);
                let s = mchar(t, 2, lam, kappa) + mchar(t, 2, lam, kappa * t.q % m2);
                -(mchar(t, 1, ea, a) * s)
            }
            _ => Complex64::new(0.0, 0.0),
        },
        IrrLabel::Cuspidal { phi } => match *class {
            ClassLabel::Central { a } | ClassLabel::Jordan21 { a } | ClassLabel::Jordan3 { a } => {
                let v = mchar(t, 3, phi, emb(3, a));
                let scale = match class {
                    ClassLabel::Central { .. } => (q - 1.0) * (q * q - 1.0),
                    ClassLabel::Jordan21 { .. } => -(q - 1.0),
                    _ => 1.0,
                };
                v * scale
            }
            ClassLabel::Cubic { z } => {
                let m3 = t.unit_order(3) as u64;
                let zq = (z as u64 * t.q as u64 % m3) as u32;
                let zq2 = (zq as u64 * t.q as u64 % m3) as u32;
                mchar(t, 3, phi, z) + mchar(t, 3, phi, zq) + mchar(t, 3, phi, zq2)
            }
            _ => Complex64::new(0.0, 0.0),
        },
    }
}

/// Compare the exact table against the float backend entry by entry.
/// Returns the maximum deviation |exact - float| / max(1, |float|).
pub fn table_max_relative_error(eng: &Engine) -> f64 {
    let t = eng.tower();
    let mut worst: f64 = 0.0;
    for label in eng.irr_labels() {
        let exact = eng.irr(label);
        for (ci, d) in eng.classes().list.iter().enumerate() {
            let f = chi_value_f64(t, label, &d.label);
            let e = exact.values[ci].approx();
            let err = (e - f).norm() / f.norm().max(1.0);
            if err > worst {
                worst = err;
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Engine;

    #[test]
    fn float_backend_matches_exact_at_q2() {
        let eng = Engine::shared(2);
        assert!(table_max_relative_error(&eng) < 1e-9);
    }
}
