//! Interpolating families of unipotent pattern subgroups and the
//! decomposition of cuspidal (x) principal-triple products into sums of
//! Gelfand-Graev inductions.
//!
//! For GL(n), a pattern subgroup N' of the upper unipotent group N is cut
//! out by zeroing a set of strictly-upper entries that is closed under
//! matrix products. An interpolating family assigns to each i in
//! 0..=(n-2)(n-1)/2 a set of c_i(n) pattern subgroups of index q^i, where
//! the c_i are the coefficients of prod_{k=1}^{n-2} (1 + q + ... + q^k).
//!
//! The full identity check is available for n = 3, where the left-hand
//! side is computable from the character table. For n >= 4 the left-hand
//! character data is not available here, so only the combinatorial side
//! (coefficients, pattern enumeration, family validity, dimension
//! bookkeeping) and demonstration-scale induced-character values over
//! GL(4,2) are provided; the identity check itself reports unavailable.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::chartable::IrrLabel;
use crate::engine::Engine;
use crate::induction::{self, PatternMask, SubgroupSpec};
use crate::tensorlab::VerifyReport;
use crate::Error;

/// Coefficients c_0..c_ñ of prod_{k=1}^{n-2} (1 + q + ... + q^k).
pub fn coefficients(n: u32) -> Result<Vec<u64>, Error> {
    if n < 3 {
        return Err(Error::InvalidSpec("coefficients need n >= 3".into()));
    }
    let mut poly: Vec<u64> = vec![1];
    for k in 1..=(n - 2) as usize {
        let factor: Vec<u64> = vec![1; k + 1];
        let mut next = vec![0u64; poly.len() + factor.len() - 1];
        for (i, &a) in poly.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        poly = next;
    }
    Ok(poly)
}

/// A set of strictly-upper positions (1-based, i < j) constrained to zero.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct UnipotentPattern {
    pub n: u32,
    pub zeros: BTreeSet<(u32, u32)>,
}

impl UnipotentPattern {
    pub fn full_group(n: u32) -> UnipotentPattern {
        UnipotentPattern {
            n,
            zeros: BTreeSet::new(),
        }
    }

    pub fn new(n: u32, zeros: impl IntoIterator<Item = (u32, u32)>) -> UnipotentPattern {
        UnipotentPattern {
            n,
            zeros: zeros.into_iter().collect(),
        }
    }

    /// Symbolic closure check: for every zeroed (i,j) and every i < k < j,
    /// the product term u_{ik} v_{kj} must vanish identically, i.e. (i,k)
    /// or (k,j) must be zeroed too.
    pub fn is_subgroup(&self) -> bool {
        self.zeros.iter().all(|&(i, j)| {
            (i + 1..j).all(|k| self.zeros.contains(&(i, k)) || self.zeros.contains(&(k, j)))
        })
    }

    /// log_q of the index in the full unipotent group.
    pub fn zero_count(&self) -> u32 {
        self.zeros.len() as u32
    }

    /// The 3x3 mask used by the induction machinery (n = 3 only).
    pub fn mask3(&self) -> Option<PatternMask> {
        if self.n != 3 {
            return None;
        }
        let mut mask = 0u8;
        for &(i, j) in &self.zeros {
            mask |= match (i, j) {
                (1, 2) => induction::PATTERN_ZERO_X,
                (1, 3) => induction::PATTERN_ZERO_Z,
                (2, 3) => induction::PATTERN_ZERO_Y,
                _ => return None,
            };
        }
        Some(mask)
    }
}

/// All subgroup-closed patterns with exactly `i` zeroed entries, in
/// deterministic (lexicographic) order.
pub fn enumerate_patterns(n: u32, i: u32) -> Vec<UnipotentPattern> {
    let positions: Vec<(u32, u32)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(u32, u32)> = Vec::new();
    fn rec(
        positions: &[(u32, u32)],
        start: usize,
        remaining: u32,
        n: u32,
        chosen: &mut Vec<(u32, u32)>,
        out: &mut Vec<UnipotentPattern>,
    ) {
        if remaining == 0 {
            let p = UnipotentPattern::new(n, chosen.iter().copied());
            if p.is_subgroup() {
                out.push(p);
            }
            return;
        }
        for idx in start..positions.len() {
            if positions.len() - idx < remaining as usize {
                break;
            }
            chosen.push(positions[idx]);
            rec(positions, idx + 1, remaining - 1, n, chosen, out);
            chosen.pop();
        }
    }
    rec(&positions, 0, i, n, &mut chosen, &mut out);
    out
}

/// A family of pattern-subgroup layers indexed by i = 0..=ñ.
#[derive(Clone, Debug, Serialize)]
pub struct InterpolatingFamily {
    pub n: u32,
    pub layers: Vec<Vec<UnipotentPattern>>,
}

impl InterpolatingFamily {
    /// The two-layer family realized by the classical and (1,2)-zeroed
    /// generalized Gelfand-Graev sources at n = 3.
    pub fn classical_n3() -> InterpolatingFamily {
        InterpolatingFamily {
            n: 3,
            layers: vec![
                vec![UnipotentPattern::full_group(3)],
                vec![UnipotentPattern::new(3, [(1, 2)])],
            ],
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let n = self.n;
        if n < 3 {
            return Err(Error::InvalidSpec("family needs n >= 3".into()));
        }
        let coeffs = coefficients(n)?;
        if self.layers.len() != coeffs.len() {
            return Err(Error::InvalidSpec(format!(
                "family must have {} layers, found {}",
                coeffs.len(),
                self.layers.len()
            )));
        }
        for (i, layer) in self.layers.iter().enumerate() {
            if layer.len() as u64 != coeffs[i] {
                return Err(Error::InvalidSpec(format!(
                    "layer {} must contain {} subgroups, found {}",
                    i,
                    coeffs[i],
                    layer.len()
                )));
            }
            for p in layer {
                if p.n != n {
                    return Err(Error::InvalidSpec("pattern size mismatch".into()));
                }
                if p.zero_count() != i as u32 {
                    return Err(Error::InvalidSpec(format!(
                        "layer {} pattern has {} zeros",
                        i,
                        p.zero_count()
                    )));
                }
                if !p.is_subgroup() {
                    return Err(Error::InvalidSpec(format!(
                        "pattern {:?} does not close under products",
                        p.zeros
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Dimension bookkeeping for the n = 3 identity: the indices [G : Z N']
/// over the family must sum to the degree of the left-hand side.
pub fn degree_filter_n3(eng: &Engine, family: &InterpolatingFamily) -> bool {
    let q = eng.q() as u64;
    let order = eng.group_order();
    let lhs = (q - 1) * (q * q - 1) * (q + 1) * (q * q + q + 1);
    let mut rhs = 0u64;
    for layer in &family.layers {
        for p in layer {
            let mask = p.mask3().expect("n = 3 family");
            rhs += order / induction::FusionKey::ZPattern(mask).subgroup_order(eng.q());
        }
    }
    lhs == rhs
}

/// Exact identity check at n = 3: cuspidal (x) principal-triple against the
/// sum of Gelfand-Graev inductions over the family, for every admissible
/// parameter tuple and each given nontrivial additive twist.
pub fn check_family_n3(
    eng: &Engine,
    family: &InterpolatingFamily,
    twists: &[u8],
) -> Result<VerifyReport, Error> {
    let mut report = VerifyReport::new(format!("family {:?}", family_tag(family)), eng.q());
    family.validate()?;
    if family.n != 3 {
        return Err(Error::InvalidSpec("identity check is n = 3 only".into()));
    }
    if eng.q() < 4 {
        report
            .notes
            .push("needs q >= 4 (three distinct parameters)".into());
        report.passed = true;
        return Ok(report);
    }
    if !degree_filter_n3(eng, family) {
        report
            .failures
            .push("degree bookkeeping fails: the identity is impossible".into());
        report.passed = false;
        return Ok(report);
    }
    let t = eng.tower();
    let m1 = eng.q() - 1;
    let m3 = t.unit_order(3);
    let masks: Vec<PatternMask> = family
        .layers
        .iter()
        .flatten()
        .map(|p| p.mask3().unwrap())
        .collect();

    let mut phis: Vec<u32> = Vec::new();
    for f in 0..m3 {
        let f1 = (f as u64 * eng.q() as u64 % m3 as u64) as u32;
        let f2 = (f1 as u64 * eng.q() as u64 % m3 as u64) as u32;
        if f1 != f && f < f1 && f < f2 {
            phis.push(f);
        }
    }
    let mut triples: Vec<[u32; 3]> = Vec::new();
    for a in 0..m1 {
        for b in (a + 1)..m1 {
            for c in (b + 1)..m1 {
                triples.push([a, b, c]);
            }
        }
    }

    for &psi in &phis {
        for tri in &triples {
            let psic = crate::chars::MultChar::new(t, 3, psi);
            let central = psic
                .restrict(t)
                .product(t, &crate::chars::MultChar::new(t, 1, tri[0]))
                .product(t, &crate::chars::MultChar::new(t, 1, tri[1]))
                .product(t, &crate::chars::MultChar::new(t, 1, tri[2]));
            let lhs = eng
                .irr(&IrrLabel::Cuspidal { phi: psi })
                .product(&eng.irr(&IrrLabel::Triple { a: tri[0], b: tri[1], c: tri[2] }));
            for &c in twists {
                assert!(c != 0);
                let mut rhs = crate::tensorlab::ClassFunction::zero(eng);
                for &mask in &masks {
                    let spec = SubgroupSpec::ZPattern {
                        mask,
                        central,
                        psi: crate::chars::AddChar::new(c),
                    };
                    rhs = rhs.add(&induction::induce_gg(eng, &spec)?);
                }
                report.tuples_checked += 1;
                if !lhs.eq_exact(&rhs) {
                    report.failures.push(format!(
                        "psi={} triple={:?} twist={}: mismatch at classes {:?}",
                        psi,
                        tri,
                        c,
                        lhs.diff_classes(&rhs)
                    ));
                }
            }
        }
    }
    report.passed = report.failures.is_empty() && report.tuples_checked > 0;
    Ok(report)
}

fn family_tag(family: &InterpolatingFamily) -> Vec<Vec<Vec<(u32, u32)>>> {
    family
        .layers
        .iter()
        .map(|l| l.iter().map(|p| p.zeros.iter().copied().collect()).collect())
        .collect()
}

/// Exhaustively test every valid n = 3 family and report which pass.
/// Output order is deterministic.
pub fn search_families_n3(
    eng: &Engine,
    twists: &[u8],
) -> Result<Vec<(InterpolatingFamily, VerifyReport)>, Error> {
    let layer1 = enumerate_patterns(3, 1);
    let mut out = Vec::new();
    for p in layer1 {
        let family = InterpolatingFamily {
            n: 3,
            layers: vec![vec![UnipotentPattern::full_group(3)], vec![p]],
        };
        let report = check_family_n3(eng, &family, twists)?;
        out.push((family, report));
    }
    Ok(out)
}

/// Demonstration-scale induced values over GL(4,2): the Gelfand-Graev
/// induction from a pattern subgroup (the center of GL(4,2) is trivial),
/// evaluated at a single element by the literal Frobenius sum.
pub mod gl4 {
    use super::UnipotentPattern;

    /// 4x4 matrix over F_2, rows as nibbles of a u16 (bit 4*i+j = entry ij).
    pub type Mat4 = u16;

    pub fn entry(m: Mat4, i: usize, j: usize) -> u16 {
        (m >> (4 * i + j)) & 1
    }

    pub fn identity() -> Mat4 {
        (0..4).fold(0, |acc, i| acc | 1 << (4 * i + i))
    }

    pub fn mul(a: Mat4, b: Mat4) -> Mat4 {
        let mut out = 0u16;
        for i in 0..4 {
            let arow = (a >> (4 * i)) & 0xf;
            let mut row = 0u16;
            for k in 0..4 {
                if arow >> k & 1 == 1 {
                    row ^= (b >> (4 * k)) & 0xf;
                }
            }
            out |= row << (4 * i);
        }
        out
    }

    pub fn invert(m: Mat4) -> Option<Mat4> {
        // Gauss-Jordan on rows of [m | I] packed as (row, aug) nibble pairs.
        let mut rows: Vec<(u16, u16)> = (0..4)
            .map(|i| (((m >> (4 * i)) & 0xf), 1u16 << i))
            .collect();
        for col in 0..4 {
            let piv = (col..4).find(|&r| rows[r].0 >> col & 1 == 1)?;
            rows.swap(col, piv);
            let (prow, paug) = rows[col];
            for r in 0..4 {
                if r != col && rows[r].0 >> col & 1 == 1 {
                    rows[r].0 ^= prow;
                    rows[r].1 ^= paug;
                }
            }
        }
        let mut out = 0u16;
        for (i, &(_, aug)) in rows.iter().enumerate() {
            out |= aug << (4 * i);
        }
        Some(out)
    }

    /// All elements of GL(4,2), in index order.
    pub fn enumerate_gl42() -> Vec<Mat4> {
        (0..=u16::MAX).filter(|&m| invert(m).is_some()).collect()
    }

    /// Is the matrix in the pattern subgroup N' (unipotent upper with the
    /// pattern's entries zeroed)?
    fn in_pattern(m: Mat4, pat: &UnipotentPattern) -> bool {
        for i in 0..4 {
            for j in 0..4 {
                let e = entry(m, i, j);
                let expect_diag = u16::from(i == j);
                if j < i && e != 0 {
                    return false;
                }
                if i == j && e != expect_diag {
                    return false;
                }
            }
        }
        pat.zeros
            .iter()
            .all(|&(i, j)| entry(m, i as usize - 1, j as usize - 1) == 0)
    }

    /// phi(u) = (-1)^(u12 + u23 + u34), the superdiagonal sum character.
    fn phi(m: Mat4) -> i64 {
        let s = entry(m, 0, 1) ^ entry(m, 1, 2) ^ entry(m, 2, 3);
        if s == 0 {
            1
        } else {
            -1
        }
    }

    /// Value at `g` of the character induced from (N', phi) to GL(4,2), by
    /// the literal Frobenius sum over the whole group. Always an integer
    /// since the only root of unity involved is -1.
    pub fn gamma_value(group: &[Mat4], pat: &UnipotentPattern, g: Mat4) -> i64 {
        assert_eq!(pat.n, 4);
        assert!(pat.is_subgroup());
        let subgroup_order = 1i64 << (6 - pat.zero_count());
        let mut sum = 0i64;
        for &x in group {
            let xi = invert(x).unwrap();
            let y = mul(mul(x, g), xi);
            if in_pattern(y, pat) {
                sum += phi(y);
            }
        }
        assert_eq!(sum % subgroup_order, 0, "induced value must be integral");
        sum / subgroup_order
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_values() {
        assert_eq!(coefficients(3).unwrap(), vec![1, 1]);
        assert_eq!(coefficients(4).unwrap(), vec![1, 2, 2, 1]);
        assert_eq!(coefficients(5).unwrap(), vec![1, 3, 5, 6, 5, 3, 1]);
        assert!(coefficients(2).is_err());
        // At q = 1 the product collapses to (n-1)!.
        for n in 3..9u32 {
            let total: u64 = coefficients(n).unwrap().iter().sum();
            let fact: u64 = (1..n as u64).product();
            assert_eq!(total, fact);
        }
        // Leading and trailing coefficients are 1.
        for n in 3..9u32 {
            let c = coefficients(n).unwrap();
            assert_eq!(*c.first().unwrap(), 1);
            assert_eq!(*c.last().unwrap(), 1);
            assert_eq!(c.len() as u32, (n - 2) * (n - 1) / 2 + 1);
        }
    }

    #[test]
    fn pattern_enumeration_n3() {
        let p0 = enumerate_patterns(3, 0);
        assert_eq!(p0.len(), 1);
        assert!(p0[0].zeros.is_empty());
        let p1 = enumerate_patterns(3, 1);
        // zero(1,2) and zero(2,3) close; zero(1,3) does not.
        assert_eq!(p1.len(), 2);
        assert!(p1.iter().any(|p| p.zeros.contains(&(1, 2))));
        assert!(p1.iter().any(|p| p.zeros.contains(&(2, 3))));
        assert!(!UnipotentPattern::new(3, [(1, 3)]).is_subgroup());
    }

    #[test]
    fn pattern_enumeration_n4() {
        assert_eq!(enumerate_patterns(4, 1).len(), 3);
        // the conjectured last packet: everything outside the last column
        let last = UnipotentPattern::new(4, [(1, 2), (1, 3), (2, 3)]);
        assert!(last.is_subgroup());
        assert!(enumerate_patterns(4, 3).contains(&last));
        assert_eq!(last.zero_count(), 3);
    }

    #[test]
    fn literal_closure_matches_symbolic() {
        // Enumerate the candidate subgroups over small fields and check
        // closure under products literally.
        use crate::fields::FieldTower;
        use crate::group::Mat3;
        for q in [2u32, 3, 4] {
            let t = FieldTower::make_with_limit(
                crate::engine::factor_prime_power(q).unwrap().0,
                crate::engine::factor_prime_power(q).unwrap().1,
                9,
            )
            .unwrap();
            for mask in 0u8..8 {
                let zeros: Vec<(u32, u32)> = [(1u32, 2u32), (1, 3), (2, 3)]
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let pat = UnipotentPattern::new(3, zeros);
                // literal enumeration of the unipotent set
                let free = |i: usize, j: usize| {
                    !pat.zeros.contains(&(i as u32 + 1, j as u32 + 1))
                };
                let mut elems: Vec<Mat3> = Vec::new();
                for x in 0..q as u8 {
                    for y in 0..q as u8 {
                        for z in 0..q as u8 {
                            if (x == 0 || free(0, 1)) && (y == 0 || free(1, 2)) && (z == 0 || free(0, 2)) {
                                let mut m = Mat3::identity();
                                m.e[0][1] = if free(0, 1) { x } else { 0 };
                                m.e[1][2] = if free(1, 2) { y } else { 0 };
                                m.e[0][2] = if free(0, 2) { z } else { 0 };
                                if !elems.contains(&m) {
                                    elems.push(m);
                                }
                            }
                        }
                    }
                }
                let closed = elems.iter().all(|a| {
                    elems.iter().all(|b| {
                        let p = a.mul(b, &t);
                        elems.contains(&p)
                    })
                });
                assert_eq!(
                    closed,
                    pat.is_subgroup(),
                    "closure mismatch for mask {:03b} at q={}",
                    mask,
                    q
                );
            }
        }
    }

    #[test]
    fn gl42_order_and_gamma_degree() {
        let group = gl4::enumerate_gl42();
        assert_eq!(group.len(), 20160);
        // Value at the identity equals the index [G : N'].
        let full = UnipotentPattern::full_group(4);
        let v = gl4::gamma_value(&group, &full, gl4::identity());
        assert_eq!(v, 20160 / 64);
        let last = UnipotentPattern::new(4, [(1, 2), (1, 3), (2, 3)]);
        let v = gl4::gamma_value(&group, &last, gl4::identity());
        assert_eq!(v, 20160 / 8);
    }

    #[test]
    fn family_validation() {
        let fam = InterpolatingFamily::classical_n3();
        assert!(fam.validate().is_ok());
        let bad = InterpolatingFamily {
            n: 3,
            layers: vec![vec![UnipotentPattern::full_group(3)]],
        };
        assert!(bad.validate().is_err());
    }
}
