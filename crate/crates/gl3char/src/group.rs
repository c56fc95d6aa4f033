//! GL(3,F_q): matrix arithmetic, the canonical conjugacy class list,
//! exact class sizes, and classification of arbitrary elements.
//!
//! The eight class types, in canonical order, are parameterized by
//! eigenvalue data: scalar a (possibly with a Jordan block of size 2 or 3),
//! a double eigenvalue a with a simple b (semisimple or with a Jordan
//! block), three distinct eigenvalues, an irreducible quadratic eigenvalue
//! pair {kappa, kappa^q} with a rational a, and an irreducible cubic Galois
//! orbit {z, z^q, z^{q^2}}. Parameters are stored as discrete logs; field
//! orbits are canonicalized to the member of minimal dlog.

use std::collections::HashMap;

use serde::Serialize;

use crate::fields::{ExtElement, FieldTower};
use crate::Error;

/// |GL(3,q)| = (q^3-1)(q^3-q)(q^3-q^2).
pub fn group_order(q: u32) -> u64 {
    let q = q as u64;
    let q3 = q * q * q;
    (q3 - 1) * (q3 - q) * (q3 - q * q)
}

/// A 3x3 matrix over F_q, entries as field indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat3 {
    pub e: [[u8; 3]; 3],
}

impl Mat3 {
    pub fn zero() -> Mat3 {
        Mat3 { e: [[0; 3]; 3] }
    }

    pub fn identity() -> Mat3 {
        let mut m = Mat3::zero();
        for i in 0..3 {
            m.e[i][i] = 1;
        }
        m
    }

    pub fn diag(a: u8, b: u8, c: u8) -> Mat3 {
        let mut m = Mat3::zero();
        m.e[0][0] = a;
        m.e[1][1] = b;
        m.e[2][2] = c;
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity()
    }

    pub fn mul(&self, other: &Mat3, t: &FieldTower) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0u8;
                for k in 0..3 {
                    s = t.add(s, t.mul(self.e[i][k], other.e[k][j]));
                }
                out.e[i][j] = s;
            }
        }
        out
    }

    pub fn det(&self, t: &FieldTower) -> u8 {
        let e = &self.e;
        let m = |a: u8, b: u8| t.mul(a, b);
        let term = |a, b, c| m(a, m(b, c));
        let pos = t.add(
            t.add(term(e[0][0], e[1][1], e[2][2]), term(e[0][1], e[1][2], e[2][0])),
            term(e[0][2], e[1][0], e[2][1]),
        );
        let neg = t.add(
            t.add(term(e[0][2], e[1][1], e[2][0]), term(e[0][0], e[1][2], e[2][1])),
            term(e[0][1], e[1][0], e[2][2]),
        );
        t.sub(pos, neg)
    }

    /// Inverse by adjugate; errors on singular input.
    pub fn inverse(&self, t: &FieldTower) -> Result<Mat3, Error> {
        let d = self.det(t);
        if d == 0 {
            return Err(Error::SingularMatrix);
        }
        let di = t.inv(d);
        let e = &self.e;
        let m = |a: u8, b: u8| t.mul(a, b);
        let mut adj = Mat3::zero();
        // adj[j][i] = cofactor(i,j)
        let idx = [(0usize, 1usize, 2usize), (1, 0, 2), (2, 0, 1)];
        for (i, &(_, r1, r2)) in idx.iter().enumerate() {
            for (j, &(_, c1, c2)) in idx.iter().enumerate() {
                let minor = t.sub(m(e[r1][c1], e[r2][c2]), m(e[r1][c2], e[r2][c1]));
                let sign = (i + j) % 2 == 1;
                adj.e[j][i] = if sign { t.neg(minor) } else { minor };
            }
        }
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = m(di, adj.e[i][j]);
            }
        }
        Ok(out)
    }

    /// Characteristic polynomial x^3 - tr x^2 + s2 x - det as (tr, s2, det).
    pub fn char_poly(&self, t: &FieldTower) -> (u8, u8, u8) {
        let e = &self.e;
        let tr = t.add(t.add(e[0][0], e[1][1]), e[2][2]);
        let m = |a: u8, b: u8| t.mul(a, b);
        let m01 = t.sub(m(e[0][0], e[1][1]), m(e[0][1], e[1][0]));
        let m02 = t.sub(m(e[0][0], e[2][2]), m(e[0][2], e[2][0]));
        let m12 = t.sub(m(e[1][1], e[2][2]), m(e[1][2], e[2][1]));
        let s2 = t.add(t.add(m01, m02), m12);
        (tr, s2, self.det(t))
    }

    pub fn add_mat(&self, other: &Mat3, t: &FieldTower) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = t.add(self.e[i][j], other.e[i][j]);
            }
        }
        out
    }

    pub fn scale(&self, c: u8, t: &FieldTower) -> Mat3 {
        let mut out = Mat3::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = t.mul(c, self.e[i][j]);
            }
        }
        out
    }

    pub fn row_major(&self) -> [u8; 9] {
        let mut out = [0u8; 9];
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = self.e[i][j];
            }
        }
        out
    }

    /// Decode the matrix with the given base-q digit index; used to sweep
    /// the full matrix space.
    pub fn from_index(idx: u64, q: u32) -> Mat3 {
        let mut m = Mat3::zero();
        let mut x = idx;
        for i in 0..3 {
            for j in 0..3 {
                m.e[i][j] = (x % q as u64) as u8;
                x /= q as u64;
            }
        }
        m
    }
}

/// The eight class types in canonical order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassType {
    /// aI
    Central,
    /// a with a Jordan block of size 2: divisors 1, x-a, (x-a)^2
    Jordan21,
    /// single Jordan block of size 3
    Jordan3,
    /// diag(a,a,b), semisimple
    Split2,
    /// Jordan block at a plus simple b
    Split2Jordan,
    /// diag(a,b,c), three distinct eigenvalues
    Split3,
    /// irreducible quadratic pair {kappa, kappa^q} with rational a
    Quad,
    /// irreducible cubic orbit {z, z^q, z^{q^2}}
    Cubic,
}

/// Canonical label of a conjugacy class; parameters are discrete logs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClassLabel {
    Central { a: u32 },
    Jordan21 { a: u32 },
    Jordan3 { a: u32 },
    /// a is the repeated eigenvalue, b the simple one.
    Split2 { a: u32, b: u32 },
    Split2Jordan { a: u32, b: u32 },
    /// dlogs sorted ascending.
    Split3 { a: u32, b: u32, c: u32 },
    /// kappa: dlog in F_{q^2}, minimal over {kappa, kappa^q}.
    Quad { kappa: u32, a: u32 },
    /// z: dlog in F_{q^3}, minimal over the Galois orbit.
    Cubic { z: u32 },
}

impl ClassLabel {
    pub fn class_type(&self) -> ClassType {
        match self {
            ClassLabel::Central { .. } => ClassType::Central,
            ClassLabel::Jordan21 { .. } => ClassType::Jordan21,
            ClassLabel::Jordan3 { .. } => ClassType::Jordan3,
            ClassLabel::Split2 { .. } => ClassType::Split2,
            ClassLabel::Split2Jordan { .. } => ClassType::Split2Jordan,
            ClassLabel::Split3 { .. } => ClassType::Split3,
            ClassLabel::Quad { .. } => ClassType::Quad,
            ClassLabel::Cubic { .. } => ClassType::Cubic,
        }
    }
}

/// A class with its canonical representative matrix and exact size.
#[derive(Clone, Debug)]
pub struct ClassDatum {
    pub label: ClassLabel,
    pub representative: Mat3,
    pub size: u64,
}

/// The full canonical class list for one q, plus lookup structures.
pub struct ClassData {
    pub q: u32,
    pub list: Vec<ClassDatum>,
    index: HashMap<ClassLabel, usize>,
    /// (trace, norm) of the minimal polynomial -> canonical kappa index.
    quad_canon: HashMap<(u8, u8), u16>,
    /// (e1, e2, e3) of the characteristic polynomial -> canonical z index.
    cubic_canon: HashMap<(u8, u8, u8), u16>,
}

impl ClassData {
    pub fn build(t: &FieldTower) -> ClassData {
        let q = t.q;
        let q16 = q as u16;

        // Canonical orbit representatives for quadratic and cubic parameters.
        let mut quad_canon: HashMap<(u8, u8), u16> = HashMap::new();
        for x in q16..(q16 * q16) {
            let xe = ExtElement::new(2, x);
            let tr = t.rel_trace(xe);
            let nm = t.norm(xe).index as u8;
            let key = (tr, nm);
            let entry = quad_canon.entry(key).or_insert(x);
            if t.dlog(2, x).unwrap() < t.dlog(2, *entry).unwrap() {
                *entry = x;
            }
        }
        let q3 = q16 * q16 * q16;
        let mut cubic_canon: HashMap<(u8, u8, u8), u16> = HashMap::new();
        for z in q16..q3 {
            let ze = ExtElement::new(3, z);
            let c = t.coeffs(3, z);
            if c[1] == 0 && c[2] == 0 {
                continue; // base field
            }
            let e1 = t.rel_trace(ze);
            let zq = t.frobenius(ze, 1).index;
            let zq2 = t.frobenius(ze, 2).index;
            let e2sum = t.ext_add(
                3,
                t.ext_add(3, t.ext_mul(3, z, zq), t.ext_mul(3, z, zq2)),
                t.ext_mul(3, zq, zq2),
            );
            let e2c = t.coeffs(3, e2sum);
            debug_assert!(e2c[1] == 0 && e2c[2] == 0);
            let e3 = t.norm(ze).index as u8;
            let key = (e1, e2c[0], e3);
            let entry = cubic_canon.entry(key).or_insert(z);
            if t.dlog(3, z).unwrap() < t.dlog(3, *entry).unwrap() {
                *entry = z;
            }
        }

        // The canonical list, in type order then parameter dlog order.
        let mut list: Vec<ClassDatum> = Vec::new();
        let units: Vec<u32> = (0..q - 1).collect();
        for &a in &units {
            list.push(datum(t, ClassLabel::Central { a }));
        }
        for &a in &units {
            list.push(datum(t, ClassLabel::Jordan21 { a }));
        }
        for &a in &units {
            list.push(datum(t, ClassLabel::Jordan3 { a }));
        }
        for &a in &units {
            for &b in &units {
                if a != b {
                    list.push(datum(t, ClassLabel::Split2 { a, b }));
                }
            }
        }
        for &a in &units {
            for &b in &units {
                if a != b {
                    list.push(datum(t, ClassLabel::Split2Jordan { a, b }));
                }
            }
        }
        for i in 0..units.len() {
            for j in (i + 1)..units.len() {
                for k in (j + 1)..units.len() {
                    list.push(datum(
                        t,
                        ClassLabel::Split3 {
                            a: units[i],
                            b: units[j],
                            c: units[k],
                        },
                    ));
                }
            }
        }
        let mut quads: Vec<u32> = quad_canon.values().map(|&x| t.dlog(2, x).unwrap()).collect();
        quads.sort_unstable();
        quads.dedup();
        for &kappa in &quads {
            for &a in &units {
                list.push(datum(t, ClassLabel::Quad { kappa, a }));
            }
        }
        let mut cubics: Vec<u32> = cubic_canon.values().map(|&z| t.dlog(3, z).unwrap()).collect();
        cubics.sort_unstable();
        cubics.dedup();
        for &z in &cubics {
            list.push(datum(t, ClassLabel::Cubic { z }));
        }

        // Exact class sizes: |class| = |G| / |centralizer|, the centralizer
        // order counted by enumerating the invertible elements of the
        // commutant algebra of the representative.
        let order = group_order(q);
        for d in &mut list {
            d.size = if matches!(d.label, ClassLabel::Central { .. }) {
                1
            } else {
                order / centralizer_order(t, &d.representative)
            };
        }

        let index = list
            .iter()
            .enumerate()
            .map(|(i, d)| (d.label, i))
            .collect();
        ClassData {
            q,
            list,
            index,
            quad_canon,
            cubic_canon,
        }
    }

    pub fn count(&self) -> usize {
        self.list.len()
    }

    pub fn index_of(&self, label: &ClassLabel) -> usize {
        *self
            .index
            .get(label)
            .unwrap_or_else(|| panic!("unknown class label {:?}", label))
    }

    /// Classify an invertible matrix to its canonical class label.
    pub fn classify(&self, t: &FieldTower, m: &Mat3) -> Result<ClassLabel, Error> {
        let (tr, s2, det) = m.char_poly(t);
        if det == 0 {
            return Err(Error::SingularMatrix);
        }
        // p(x) = x^3 + c2 x^2 + c1 x + c0
        let c2 = t.neg(tr);
        let c1 = s2;
        let c0 = t.neg(det);
        // Roots with multiplicity by synthetic division.
        let mut roots: Vec<u8> = Vec::new();
        let mut poly = vec![c0, c1, c2, 1u8]; // low-degree first
        let mut r = 1u32;
        while poly.len() > 1 && r < t.q {
            let rr = r as u8;
            // Evaluate current poly at rr.
            let mut acc = 0u8;
            for &c in poly.iter().rev() {
                acc = t.add(t.mul(acc, rr), c);
            }
            if acc == 0 {
                // Divide by (x - rr).
                let mut quot = vec![0u8; poly.len() - 1];
                let mut carry = 0u8;
                for i in (0..poly.len() - 1).rev() {
                    let coef = t.add(poly[i + 1], t.mul(carry, rr));
                    quot[i] = coef;
                    carry = coef;
                }
                roots.push(rr);
                poly = quot;
                // Try the same root again for multiplicity.
            } else {
                r += 1;
            }
        }

        let dlog1 = |a: u8| t.dlog(1, a as u16).unwrap();
        match roots.len() {
            3 => {
                roots.sort_unstable_by_key(|&a| dlog1(a));
                let (a, b, c) = (roots[0], roots[1], roots[2]);
                if a == b && b == c {
                    let ai = Mat3::diag(a, a, a);
                    if *m == ai {
                        return Ok(ClassLabel::Central { a: dlog1(a) });
                    }
                    let n = m.add_mat(&ai.scale(t.neg(1), t), t);
                    if n.mul(&n, t) == Mat3::zero() {
                        return Ok(ClassLabel::Jordan21 { a: dlog1(a) });
                    }
                    return Ok(ClassLabel::Jordan3 { a: dlog1(a) });
                }
                if a == b || b == c || a == c {
                    let (dbl, simple) = if a == b {
                        (a, c)
                    } else if b == c {
                        (b, a)
                    } else {
                        (a, b)
                    };
                    let ma = m.add_mat(&Mat3::diag(dbl, dbl, dbl).scale(t.neg(1), t), t);
                    let mb = m.add_mat(&Mat3::diag(simple, simple, simple).scale(t.neg(1), t), t);
                    if ma.mul(&mb, t) == Mat3::zero() {
                        return Ok(ClassLabel::Split2 {
                            a: dlog1(dbl),
                            b: dlog1(simple),
                        });
                    }
                    return Ok(ClassLabel::Split2Jordan {
                        a: dlog1(dbl),
                        b: dlog1(simple),
                    });
                }
                Ok(ClassLabel::Split3 {
                    a: dlog1(a),
                    b: dlog1(b),
                    c: dlog1(c),
                })
            }
            1 => {
                let b = roots[0];
                // Remaining quadratic x^2 + poly[1] x + poly[0]: its roots
                // have trace -poly[1] and product poly[0].
                let key = (t.neg(poly[1]), poly[0]);
                let kappa = *self
                    .quad_canon
                    .get(&key)
                    .expect("irreducible quadratic must have a root in F_{q^2}");
                Ok(ClassLabel::Quad {
                    kappa: t.dlog(2, kappa).unwrap(),
                    a: dlog1(b),
                })
            }
            0 => {
                let key = (tr, s2, det);
                let z = *self
                    .cubic_canon
                    .get(&key)
                    .expect("irreducible cubic must have a root in F_{q^3}");
                Ok(ClassLabel::Cubic {
                    z: t.dlog(3, z).unwrap(),
                })
            }
            _ => unreachable!("a cubic has 0, 1 or 3 rational roots with multiplicity"),
        }
    }
}

fn representative(t: &FieldTower, label: &ClassLabel) -> Mat3 {
    let el = |d: u8, k: u32| t.exp(d, k);
    match *label {
        ClassLabel::Central { a } => {
            let a = el(1, a) as u8;
            Mat3::diag(a, a, a)
        }
        ClassLabel::Jordan21 { a } => {
            let a = el(1, a) as u8;
            let mut m = Mat3::diag(a, a, a);
            m.e[0][1] = 1;
            m
        }
        ClassLabel::Jordan3 { a } => {
            let a = el(1, a) as u8;
            let mut m = Mat3::diag(a, a, a);
            m.e[0][1] = 1;
            m.e[1][2] = 1;
            m
        }
        ClassLabel::Split2 { a, b } => Mat3::diag(el(1, a) as u8, el(1, a) as u8, el(1, b) as u8),
        ClassLabel::Split2Jordan { a, b } => {
            let mut m = Mat3::diag(el(1, a) as u8, el(1, a) as u8, el(1, b) as u8);
            m.e[0][1] = 1;
            m
        }
        ClassLabel::Split3 { a, b, c } => {
            Mat3::diag(el(1, a) as u8, el(1, b) as u8, el(1, c) as u8)
        }
        ClassLabel::Quad { kappa, a } => t
            .embed_quadratic(ExtElement::new(2, el(2, kappa)), el(1, a) as u8)
            .expect("nonzero parameters"),
        ClassLabel::Cubic { z } => t
            .embed_cubic(ExtElement::new(3, el(3, z)))
            .expect("nonzero parameter"),
    }
}

fn datum(t: &FieldTower, label: ClassLabel) -> ClassDatum {
    ClassDatum {
        label,
        representative: representative(t, &label),
        size: 0,
    }
}

/// Order of the centralizer of a non-central element: the number of
/// invertible members of its commutant algebra, enumerated exactly.
fn centralizer_order(t: &FieldTower, r: &Mat3) -> u64 {
    // Solve X R = R X: 9 unknowns, 9 equations over F_q.
    let mut a = [[0u8; 9]; 9];
    for i in 0..3 {
        for j in 0..3 {
            let eq = 3 * i + j;
            for ai in 0..3 {
                for b in 0..3 {
                    let var = 3 * ai + b;
                    let mut coef = 0u8;
                    if ai == i {
                        coef = t.add(coef, r.e[b][j]);
                    }
                    if b == j {
                        coef = t.sub(coef, r.e[i][ai]);
                    }
                    a[eq][var] = coef;
                }
            }
        }
    }
    // Gaussian elimination to find a null-space basis.
    let mut rows: Vec<[u8; 9]> = a.to_vec();
    let mut pivot_col: Vec<usize> = Vec::new();
    let mut rank = 0;
    for col in 0..9 {
        let mut piv = None;
        for rr in rank..rows.len() {
            if rows[rr][col] != 0 {
                piv = Some(rr);
                break;
            }
        }
        let Some(piv) = piv else { continue };
        rows.swap(rank, piv);
        let inv = t.inv(rows[rank][col]);
        for c in 0..9 {
            rows[rank][c] = t.mul(rows[rank][c], inv);
        }
        for rr in 0..rows.len() {
            if rr != rank && rows[rr][col] != 0 {
                let f = rows[rr][col];
                for c in 0..9 {
                    rows[rr][c] = t.sub(rows[rr][c], t.mul(f, rows[rank][c]));
                }
            }
        }
        pivot_col.push(col);
        rank += 1;
    }
    let free_cols: Vec<usize> = (0..9).filter(|c| !pivot_col.contains(c)).collect();
    let dim = free_cols.len();
    // Basis of the commutant: one vector per free column.
    let mut basis: Vec<[u8; 9]> = Vec::with_capacity(dim);
    for &fc in &free_cols {
        let mut v = [0u8; 9];
        v[fc] = 1;
        for (ri, &pc) in pivot_col.iter().enumerate() {
            v[pc] = t.neg(rows[ri][fc]);
        }
        basis.push(v);
    }
    // Count invertible combinations.
    let q = t.q as u64;
    let total = q.pow(dim as u32);
    let mut count = 0u64;
    let mut combo = vec![0u8; dim];
    for idx in 0..total {
        let mut x = idx;
        for c in combo.iter_mut() {
            *c = (x % q) as u8;
            x /= q;
        }
        let mut mat = Mat3::zero();
        for (bi, b) in basis.iter().enumerate() {
            if combo[bi] == 0 {
                continue;
            }
            for k in 0..9 {
                if b[k] != 0 {
                    let i = k / 3;
                    let j = k % 3;
                    mat.e[i][j] = t.add(mat.e[i][j], t.mul(combo[bi], b[k]));
                }
            }
        }
        if mat.det(t) != 0 {
            count += 1;
        }
    }
    count
}

/// Count invertible 3x3 matrices by full enumeration (small q only).
pub fn count_invertible_bruteforce(t: &FieldTower) -> u64 {
    let q = t.q as u64;
    let total = q.pow(9);
    let mut count = 0;
    for idx in 0..total {
        if Mat3::from_index(idx, t.q).det(t) != 0 {
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    fn tower(q: u32) -> FieldTower {
        let (p, n) = match q {
            2 => (2, 1),
            3 => (3, 1),
            4 => (2, 2),
            5 => (5, 1),
            8 => (2, 3),
            9 => (3, 2),
            _ => (q, 1),
        };
        FieldTower::make(p, n).unwrap()
    }

    #[test]
    fn order_formula_matches_bruteforce() {
        for q in [2u32, 3] {
            let t = tower(q);
            assert_eq!(count_invertible_bruteforce(&t), group_order(q));
        }
        assert_eq!(group_order(2), 168);
        assert_eq!(group_order(3), 11232);
        assert_eq!(group_order(4), 181_440);
        assert_eq!(group_order(5), 1_488_000);
    }

    #[test]
    fn class_counts() {
        for (q, expect) in [(2u32, 6usize), (3, 24), (4, 60), (5, 120)] {
            let t = tower(q);
            let cd = ClassData::build(&t);
            assert_eq!(cd.count(), expect, "class count at q={}", q);
            let total: u64 = cd.list.iter().map(|d| d.size).sum();
            assert_eq!(total, group_order(q), "class equation at q={}", q);
        }
    }

    #[test]
    fn gl32_class_sizes() {
        // GL(3,2): known class sizes 1, 21, 42, 56, 24, 24.
        let t = tower(2);
        let cd = ClassData::build(&t);
        let sizes: Vec<u64> = cd.list.iter().map(|d| d.size).collect();
        assert_eq!(sizes, vec![1, 21, 42, 56, 24, 24]);
    }

    #[test]
    fn q2_class_types() {
        let t = tower(2);
        let cd = ClassData::build(&t);
        let types: Vec<ClassType> = cd.list.iter().map(|d| d.label.class_type()).collect();
        assert_eq!(
            types,
            vec![
                ClassType::Central,
                ClassType::Jordan21,
                ClassType::Jordan3,
                ClassType::Quad,
                ClassType::Cubic,
                ClassType::Cubic
            ]
        );
    }

    #[test]
    fn sizes_match_full_enumeration() {
        for q in [2u32, 3] {
            let t = tower(q);
            let cd = ClassData::build(&t);
            let mut counts: HashMap<ClassLabel, u64> = HashMap::new();
            let total = (q as u64).pow(9);
            for idx in 0..total {
                let m = Mat3::from_index(idx, q);
                if m.det(&t) == 0 {
                    continue;
                }
                let label = cd.classify(&t, &m).unwrap();
                *counts.entry(label).or_insert(0) += 1;
            }
            assert_eq!(counts.len(), cd.count(), "every label reached at q={}", q);
            for d in &cd.list {
                assert_eq!(counts[&d.label], d.size, "size of {:?} at q={}", d.label, q);
            }
        }
    }

    #[test]
    fn classify_representatives_roundtrip() {
        for q in [2u32, 3, 4, 5] {
            let t = tower(q);
            let cd = ClassData::build(&t);
            for d in &cd.list {
                assert_eq!(cd.classify(&t, &d.representative).unwrap(), d.label);
            }
        }
    }

    #[test]
    fn classify_is_conjugation_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for q in [3u32, 4] {
            let t = tower(q);
            let cd = ClassData::build(&t);
            for d in &cd.list {
                for _ in 0..100 {
                    let x = loop {
                        let idx = rng.gen_range(0..(q as u64).pow(9));
                        let m = Mat3::from_index(idx, q);
                        if m.det(&t) != 0 {
                            break m;
                        }
                    };
                    let conj = x.mul(&d.representative, &t).mul(&x.inverse(&t).unwrap(), &t);
                    assert_eq!(cd.classify(&t, &conj).unwrap(), d.label);
                }
            }
        }
        // Exhaustive over all X at q = 2.
        let t = tower(2);
        let cd = ClassData::build(&t);
        for d in &cd.list {
            for idx in 0..512u64 {
                let x = Mat3::from_index(idx, 2);
                if x.det(&t) == 0 {
                    continue;
                }
                let conj = x.mul(&d.representative, &t).mul(&x.inverse(&t).unwrap(), &t);
                assert_eq!(cd.classify(&t, &conj).unwrap(), d.label);
            }
        }
    }

    #[test]
    fn classify_embedded_cubic() {
        let t = tower(3);
        let cd = ClassData::build(&t);
        // embed_cubic(z) for z outside F_q classifies as Cubic with the
        // canonical orbit representative.
        let z = ExtElement::new(3, t.g3);
        let m = t.embed_cubic(z).unwrap();
        let label = cd.classify(&t, &m).unwrap();
        let dz = t.dlog(3, t.g3).unwrap();
        let orbit = [
            dz,
            dz * t.q % t.unit_order(3),
            dz * t.q * t.q % t.unit_order(3),
        ];
        let min = *orbit.iter().min().unwrap();
        assert_eq!(label, ClassLabel::Cubic { z: min });
    }

    #[test]
    fn matrix_inverse() {
        let t = tower(5);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let idx = rng.gen_range(0..(5u64).pow(9));
            let m = Mat3::from_index(idx, 5);
            if m.det(&t) == 0 {
                continue;
            }
            assert!(m.mul(&m.inverse(&t).unwrap(), &t).is_identity());
        }
    }
}
