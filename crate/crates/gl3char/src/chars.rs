//! Multiplicative characters of F_{q^d}^x and additive characters of F_q.
//!
//! A multiplicative character is stored as an exponent k modulo q^d - 1
//! against the tower generator g_d: it maps x to zeta_{q^d-1}^{k * dlog(x)}.
//! Products, Frobenius twists, restriction to F_q^x, canonical extension
//! and norm inflation are all exponent arithmetic.
//!
//! Restriction and extension use the transport constant u_d of the tower:
//! g1 embeds as g_d^{t_d * u_d} with t_d = (q^d-1)/(q-1), so a character of
//! exponent v restricts to exponent v*u_d mod (q-1), and the canonical
//! extension of exponent a is a*u_d^{-1} mod (q-1).

use serde::{Deserialize, Serialize};

use crate::cyclo::CycValue;
use crate::fields::{ExtElement, FieldTower};

/// Multiplicative character of F_{q^d}^x.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultChar {
    pub degree: u8,
    pub exp: u32,
}

fn mod_inverse(a: u32, m: u32) -> u32 {
    // m is small; brute force is fine.
    (1..m).find(|&x| (a as u64 * x as u64) % m as u64 == 1).unwrap_or(0)
}

impl MultChar {
    pub fn new(t: &FieldTower, degree: u8, exp: u32) -> MultChar {
        let m = t.unit_order(degree);
        MultChar {
            degree,
            exp: exp % m,
        }
    }

    pub fn trivial(degree: u8) -> MultChar {
        MultChar { degree, exp: 0 }
    }

    pub fn is_trivial(&self) -> bool {
        self.exp == 0
    }

    pub fn product(&self, t: &FieldTower, other: &MultChar) -> MultChar {
        assert_eq!(self.degree, other.degree);
        MultChar::new(t, self.degree, self.exp + other.exp)
    }

    pub fn inverse(&self, t: &FieldTower) -> MultChar {
        let m = t.unit_order(self.degree);
        MultChar::new(t, self.degree, (m - self.exp % m) % m)
    }

    pub fn power(&self, t: &FieldTower, k: u32) -> MultChar {
        let m = t.unit_order(self.degree) as u64;
        MultChar::new(t, self.degree, ((self.exp as u64 * k as u64) % m) as u32)
    }

    /// The Frobenius twist: chi^q = chi after x -> x^q.
    pub fn frobenius(&self, t: &FieldTower) -> MultChar {
        self.power(t, t.q)
    }

    /// Galois-orbit canonical form: minimal exponent among the q^i twists.
    pub fn galois_canonical(&self, t: &FieldTower) -> MultChar {
        let mut best = *self;
        let mut cur = *self;
        for _ in 1..self.degree {
            cur = cur.frobenius(t);
            if cur.exp < best.exp {
                best = cur;
            }
        }
        best
    }

    /// Fixed by the Frobenius twist, i.e. factors through the norm.
    pub fn is_galois_fixed(&self, t: &FieldTower) -> bool {
        self.frobenius(t).exp == self.exp
    }

    /// Restriction to F_q^x (degree 2 or 3 only).
    pub fn restrict(&self, t: &FieldTower) -> MultChar {
        assert!(self.degree >= 2, "restriction needs an extension character");
        let u = if self.degree == 2 { t.u2 } else { t.u3 };
        let m = (t.q - 1) as u64;
        MultChar {
            degree: 1,
            exp: ((self.exp as u64 % m) * u as u64 % m) as u32,
        }
    }

    /// Canonical extension to F_{q^d}^x of a degree-1 character; the inverse
    /// of restriction on exponents.
    pub fn extend(&self, t: &FieldTower, d: u8) -> MultChar {
        assert_eq!(self.degree, 1);
        assert!(d == 2 || d == 3);
        let u = if d == 2 { t.u2 } else { t.u3 };
        let uinv = mod_inverse(u % (t.q - 1), t.q - 1);
        let exp = if t.q == 2 {
            0 // the unit group is trivial
        } else {
            (self.exp as u64 * uinv as u64 % (t.q - 1) as u64) as u32
        };
        MultChar { degree: d, exp }
    }

    /// alpha composed with the norm map N_d; equals the canonical extension
    /// raised to the power t_d = (q^d-1)/(q-1), because N_d(x) = x^{t_d}.
    pub fn inflate_norm(&self, t: &FieldTower, d: u8) -> MultChar {
        let td = (t.q.pow(d as u32) - 1) / (t.q - 1);
        self.extend(t, d).power(t, td)
    }

    /// Evaluate on a nonzero element of its domain (modulus m = order of
    /// the ambient cyclotomic field).
    pub fn value(&self, t: &FieldTower, m: u32, x: ExtElement) -> CycValue {
        assert_eq!(x.degree, self.degree);
        let ord = t.unit_order(self.degree);
        let e = t.dlog(self.degree, x.index).expect("character of zero");
        let k = (self.exp as u64 * e as u64) % ord as u64;
        debug_assert_eq!(m % ord, 0);
        CycValue::root_of_unity(m, (m as u64 / ord as u64 * k) as i64)
    }

    /// Evaluate on a base field element embedded into the domain.
    pub fn value_base(&self, t: &FieldTower, m: u32, a: u8) -> CycValue {
        self.value(t, m, ExtElement::new(self.degree, t.embed(self.degree, a)))
    }
}

/// Additive character of F_q: x -> zeta_p^{Tr(c x)} for a twist c.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct AddChar {
    pub twist: u8,
}

impl AddChar {
    pub fn new(twist: u8) -> AddChar {
        AddChar { twist }
    }

    pub fn is_trivial(&self) -> bool {
        self.twist == 0
    }

    pub fn value(&self, t: &FieldTower, m: u32, x: u8) -> CycValue {
        let tr = t.trace_to_prime(t.mul(self.twist, x)) as u64;
        debug_assert_eq!(m % t.p, 0);
        CycValue::root_of_unity(m, (m as u64 / t.p as u64 * tr) as i64)
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
    fn frobenius_twist_exponent() {
        let t = tower(2);
        let chi = MultChar::new(&t, 3, 1);
        assert_eq!(chi.frobenius(&t).exp, 2);
        // Degree 1: Frobenius fixes everything.
        let t5 = tower(5);
        for e in 0..4 {
            let a = MultChar::new(&t5, 1, e);
            assert_eq!(a.frobenius(&t5), a);
        }
        assert!(MultChar::trivial(3).frobenius(&t).is_trivial());
    }

    #[test]
    fn characters_multiply_pointwise() {
        for q in [2u32, 3, 4] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            for d in [1u8, 2, 3] {
                let ord = t.unit_order(d);
                for e1 in [0u32, 1, ord / 2] {
                    for e2 in [0u32, 1, 2] {
                        let c1 = MultChar::new(&t, d, e1);
                        let c2 = MultChar::new(&t, d, e2);
                        let prod = c1.product(&t, &c2);
                        for x in 1..t.q.pow(d as u32) as u16 {
                            let xe = ExtElement::new(d, x);
                            let lhs = prod.value(&t, m, xe);
                            let rhs = c1.value(&t, m, xe).mul(&c2.value(&t, m, xe));
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicativity_exhaustive_small_q() {
        for q in [2u32, 3] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            let chi = MultChar::new(&t, 2, 1);
            let sz = t.q * t.q;
            for x in 1..sz as u16 {
                for y in 1..sz as u16 {
                    let xy = t.ext_mul(2, x, y);
                    let lhs = chi.value(&t, m, ExtElement::new(2, xy));
                    let rhs = chi
                        .value(&t, m, ExtElement::new(2, x))
                        .mul(&chi.value(&t, m, ExtElement::new(2, y)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn restriction_agrees_pointwise() {
        for q in [3u32, 4, 5] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            for d in [2u8, 3] {
                for exp in 0..t.unit_order(d).min(20) {
                    let lam = MultChar::new(&t, d, exp);
                    let res = lam.restrict(&t);
                    for a in 1..t.q as u8 {
                        let lhs = lam.value(&t, m, ExtElement::new(d, t.embed(d, a)));
                        let rhs = res.value(&t, m, ExtElement::new(1, a as u16));
                        assert_eq!(lhs, rhs, "restriction at q={} d={} exp={}", q, d, exp);
                    }
                }
            }
        }
    }

    #[test]
    fn extension_round_trips() {
        // restrict . extend = identity for all q-1 characters at q = 5.
        let t = tower(5);
        for d in [2u8, 3] {
            for a in 0..4u32 {
                let alpha = MultChar::new(&t, 1, a);
                let ext = alpha.extend(&t, d);
                assert_eq!(ext.restrict(&t), alpha);
            }
        }
        // Trivial extends to trivial.
        assert!(MultChar::trivial(1).extend(&t, 3).is_trivial());
        // Two extensions differ by a character trivial on F_q^x: there are
        // (q^d-1)/(q-1) of them.
        let alpha = MultChar::new(&t, 1, 1);
        let canonical = alpha.extend(&t, 2);
        let mut count = 0u32;
        for e in 0..t.unit_order(2) {
            if MultChar::new(&t, 2, e).restrict(&t) == alpha {
                count += 1;
                // Any two extensions differ by a character trivial on F_q^x,
                // i.e. by an exponent divisible by q-1.
                let diff = (e + t.unit_order(2) - canonical.exp) % t.unit_order(2);
                assert_eq!(diff % (t.q - 1), 0);
            }
        }
        assert_eq!(count, t.unit_order(2) / (t.q - 1));
    }

    #[test]
    fn norm_inflation() {
        for q in [3u32, 4, 5] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            for d in [2u8, 3] {
                for a in 0..(t.q - 1).min(6) {
                    let alpha = MultChar::new(&t, 1, a);
                    let infl = alpha.inflate_norm(&t, d);
                    // Pointwise: (alpha o N_d)(x) = alpha(N_d(x)).
                    for x in 1..t.q.pow(d as u32) as u16 {
                        let lhs = infl.value(&t, m, ExtElement::new(d, x));
                        let nx = t.norm(ExtElement::new(d, x));
                        let rhs = alpha.value(&t, m, nx);
                        assert_eq!(lhs, rhs);
                    }
                    // Frobenius-invariant.
                    assert_eq!(infl.frobenius(&t), infl);
                    // Restriction to F_q^x is alpha^d.
                    assert_eq!(infl.restrict(&t), alpha.power(&t, d as u32));
                }
            }
        }
    }

    #[test]
    fn character_sums_vanish() {
        // Sum over the unit group: 0 for nontrivial, q^d - 1 for trivial.
        for q in [2u32, 3, 4] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            for d in [1u8, 2, 3] {
                let sz = t.q.pow(d as u32) as u16;
                for exp in [0u32, 1, 5] {
                    let chi = MultChar::new(&t, d, exp);
                    let mut s = CycValue::zero(m);
                    for x in 1..sz {
                        s.add_assign(&chi.value(&t, m, ExtElement::new(d, x)));
                    }
                    if chi.is_trivial() {
                        assert_eq!(s.to_integer().unwrap(), (sz - 1).into());
                    } else {
                        assert!(s.is_zero(), "q={} d={} exp={}", q, d, exp);
                    }
                }
            }
        }
    }

    #[test]
    fn additive_character_sums() {
        for q in [2u32, 3, 4, 5] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            for c in 0..t.q as u8 {
                let psi = AddChar::new(c);
                let mut s = CycValue::zero(m);
                for x in 0..t.q as u8 {
                    s.add_assign(&psi.value(&t, m, x));
                }
                if c == 0 {
                    assert_eq!(s.to_integer().unwrap(), t.q.into());
                } else {
                    assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn additive_character_is_additive() {
        for q in [4u32, 5] {
            let t = tower(q);
            let m = t.cyclotomic_modulus();
            let psi = AddChar::new(1);
            for x in 0..t.q as u8 {
                for y in 0..t.q as u8 {
                    let lhs = psi.value(&t, m, t.add(x, y));
                    let rhs = psi.value(&t, m, x).mul(&psi.value(&t, m, y));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
