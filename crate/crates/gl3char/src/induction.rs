//! Induced class functions Ind_H^G(theta) for H a maximal torus or a
//! subgroup Z·N' (center times a unipotent pattern subgroup).
//!
//! The brute-force path implements the Frobenius formula literally: one
//! sweep over all of G per subgroup, bucketing X r X^{-1} hits for every
//! canonical class representative r simultaneously. The resulting fusion
//! table (hit counts per subgroup element) is independent of the character,
//! so a single sweep serves every character of the same subgroup. Classes
//! whose representative's characteristic polynomial does not occur in H at
//! all are skipped; conjugation preserves characteristic polynomials, so
//! their fusion sets are empty.
//!
//! For the tori a closed-form fast path evaluates the same induced
//! characters from the known fusion structure; the two paths are checked
//! against each other exhaustively at small q.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chars::{AddChar, MultChar};
use crate::cyclo::CycValue;
use crate::engine::Engine;
use crate::fields::{ExtElement, FieldTower};
use crate::group::{ClassLabel, Mat3};
use crate::tensorlab::ClassFunction;
use crate::Error;

/// Strictly-upper positions of a 3x3 unipotent matrix, as mask bits:
/// bit 0 = (1,2) entry "x", bit 1 = (1,3) entry "z", bit 2 = (2,3) entry "y".
pub type PatternMask = u8;

pub const PATTERN_FULL_N: PatternMask = 0b000;
pub const PATTERN_ZERO_X: PatternMask = 0b001;
pub const PATTERN_ZERO_Z: PatternMask = 0b010;
pub const PATTERN_ZERO_Y: PatternMask = 0b100;

/// A zero-pattern defines a subgroup iff zeroing (1,3) is implied whenever
/// needed: (1,3) may stay free only if products cannot feed it, i.e. if
/// (1,3) is zeroed then (1,2) or (2,3) must be zeroed as well.
pub fn pattern_is_subgroup(mask: PatternMask) -> bool {
    if mask & PATTERN_ZERO_Z != 0 {
        mask & (PATTERN_ZERO_X | PATTERN_ZERO_Y) != 0
    } else {
        true
    }
}

/// Number of zeroed entries.
pub fn pattern_zeros(mask: PatternMask) -> u32 {
    (mask & 0b111).count_ones()
}

/// A symbolic induction source: the subgroup together with a linear
/// character on it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SubgroupSpec {
    /// Diagonal torus with character diag(x,y,z) -> a(x) b(y) c(z).
    TorusI { a: MultChar, b: MultChar, c: MultChar },
    /// Intermediate torus (w, a) -> lam(w) alpha(a), w in F_{q^2}^x.
    TorusM { lam: MultChar, alpha: MultChar },
    /// Anisotropic torus z -> phi(z), z in F_{q^3}^x.
    TorusA { phi: MultChar },
    /// Z·N'(mask) with character (s I) u -> central(s) psi(x + y), the
    /// superdiagonal sum restricted to the free entries.
    ZPattern {
        mask: PatternMask,
        central: MultChar,
        psi: AddChar,
    },
}

impl SubgroupSpec {
    pub fn torus_i(t: &FieldTower, a: u32, b: u32, c: u32) -> SubgroupSpec {
        SubgroupSpec::TorusI {
            a: MultChar::new(t, 1, a),
            b: MultChar::new(t, 1, b),
            c: MultChar::new(t, 1, c),
        }
    }

    pub fn torus_m(t: &FieldTower, lam: u32, alpha: u32) -> SubgroupSpec {
        SubgroupSpec::TorusM {
            lam: MultChar::new(t, 2, lam),
            alpha: MultChar::new(t, 1, alpha),
        }
    }

    pub fn torus_a(t: &FieldTower, phi: u32) -> SubgroupSpec {
        SubgroupSpec::TorusA {
            phi: MultChar::new(t, 3, phi),
        }
    }

    /// The classical Gelfand-Graev source Z·N.
    pub fn zn(t: &FieldTower, central: u32, twist: u8) -> SubgroupSpec {
        SubgroupSpec::ZPattern {
            mask: PATTERN_FULL_N,
            central: MultChar::new(t, 1, central),
            psi: AddChar::new(twist),
        }
    }

    /// The generalized source Z·N1, the pattern with the (1,2) entry zeroed.
    pub fn zn1(t: &FieldTower, central: u32, twist: u8) -> SubgroupSpec {
        SubgroupSpec::ZPattern {
            mask: PATTERN_ZERO_X,
            central: MultChar::new(t, 1, central),
            psi: AddChar::new(twist),
        }
    }

    pub fn fusion_key(&self) -> FusionKey {
        match self {
            SubgroupSpec::TorusI { .. } => FusionKey::TorusI,
            SubgroupSpec::TorusM { .. } => FusionKey::TorusM,
            SubgroupSpec::TorusA { .. } => FusionKey::TorusA,
            SubgroupSpec::ZPattern { mask, .. } => FusionKey::ZPattern(*mask),
        }
    }

    /// Character value on a subgroup element.
    pub fn theta(&self, t: &FieldTower, m: u32, h: &HElem) -> CycValue {
        match (self, &h.data) {
            (SubgroupSpec::TorusI { a, b, c }, HData::Diag { x, y, z }) => a
                .value(t, m, ExtElement::new(1, *x as u16))
                .mul(&b.value(t, m, ExtElement::new(1, *y as u16)))
                .mul(&c.value(t, m, ExtElement::new(1, *z as u16))),
            (SubgroupSpec::TorusM { lam, alpha }, HData::Quadratic { w, a }) => lam
                .value(t, m, ExtElement::new(2, *w))
                .mul(&alpha.value(t, m, ExtElement::new(1, *a as u16))),
            (SubgroupSpec::TorusA { phi }, HData::Cubic { z }) => {
                phi.value(t, m, ExtElement::new(3, *z))
            }
            (SubgroupSpec::ZPattern { central, psi, .. }, HData::Unipotent { scalar, sum }) => {
                central
                    .value(t, m, ExtElement::new(1, *scalar as u16))
                    .mul(&psi.value(t, m, *sum))
            }
            _ => panic!("subgroup element does not match the specification"),
        }
    }

    /// |H|.
    pub fn subgroup_order(&self, q: u32) -> u64 {
        self.fusion_key().subgroup_order(q)
    }
}

/// The subgroup underlying a specification; fusion data depends only on it.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum FusionKey {
    TorusI,
    TorusM,
    TorusA,
    ZPattern(PatternMask),
}

impl FusionKey {
    pub fn subgroup_order(&self, q: u32) -> u64 {
        let q = q as u64;
        match self {
            FusionKey::TorusI => (q - 1) * (q - 1) * (q - 1),
            FusionKey::TorusM => (q * q - 1) * (q - 1),
            FusionKey::TorusA => q * q * q - 1,
            FusionKey::ZPattern(mask) => {
                (q - 1) * q.pow(3 - pattern_zeros(*mask))
            }
        }
    }

    pub fn cache_stem(&self) -> String {
        match self {
            FusionKey::TorusI => "torus_i".into(),
            FusionKey::TorusM => "torus_m".into(),
            FusionKey::TorusA => "torus_a".into(),
            FusionKey::ZPattern(mask) => format!("z_pattern_{}", mask),
        }
    }
}

/// Evaluation data carried by each enumerated subgroup element.
#[derive(Clone, Copy, Debug)]
pub enum HData {
    Diag { x: u8, y: u8, z: u8 },
    Quadratic { w: u16, a: u8 },
    Cubic { z: u16 },
    /// scalar part and the free superdiagonal sum x + y.
    Unipotent { scalar: u8, sum: u8 },
}

#[derive(Clone, Copy, Debug)]
pub struct HElem {
    pub mat: Mat3,
    pub data: HData,
}

/// Enumerate the subgroup in a deterministic order.
pub fn enumerate_subgroup(t: &FieldTower, key: FusionKey) -> Vec<HElem> {
    let q = t.q;
    let mut out = Vec::new();
    match key {
        FusionKey::TorusI => {
            for x in 1..q as u8 {
                for y in 1..q as u8 {
                    for z in 1..q as u8 {
                        out.push(HElem {
                            mat: Mat3::diag(x, y, z),
                            data: HData::Diag { x, y, z },
                        });
                    }
                }
            }
        }
        FusionKey::TorusM => {
            for w in 1..(q * q) as u16 {
                for a in 1..q as u8 {
                    let mat = t.embed_quadratic(ExtElement::new(2, w), a).unwrap();
                    out.push(HElem {
                        mat,
                        data: HData::Quadratic { w, a },
                    });
                }
            }
        }
        FusionKey::TorusA => {
            for z in 1..(q * q * q) as u16 {
                let mat = t.embed_cubic(ExtElement::new(3, z)).unwrap();
                out.push(HElem {
                    mat,
                    data: HData::Cubic { z },
                });
            }
        }
        FusionKey::ZPattern(mask) => {
            assert!(pattern_is_subgroup(mask), "pattern does not close under products");
            let free = |bit: u8| mask & bit == 0;
            let range = |on: bool| if on { 0..q as u8 } else { 0..1 };
            for s in 1..q as u8 {
                for x in range(free(PATTERN_ZERO_X)) {
                    for y in range(free(PATTERN_ZERO_Y)) {
                        for z in range(free(PATTERN_ZERO_Z)) {
                            let mut mat = Mat3::diag(s, s, s);
                            mat.e[0][1] = t.mul(s, x);
                            mat.e[0][2] = t.mul(s, z);
                            mat.e[1][2] = t.mul(s, y);
                            out.push(HElem {
                                mat,
                                data: HData::Unipotent {
                                    scalar: s,
                                    sum: t.add(x, y),
                                },
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

/// Fusion data for one subgroup at one q: for every canonical class
/// representative r, how often X r X^{-1} hits each subgroup element as X
/// sweeps G. `counts[class] = None` when the class cannot meet the subgroup.
pub struct FusionTable {
    pub key: FusionKey,
    pub elems: Vec<HElem>,
    pub class_of_elem: Vec<u32>,
    pub counts: Vec<Option<Vec<u32>>>,
    pub order: u64,
}

#[derive(Serialize, Deserialize)]
struct FusionCacheFile {
    schema_version: u32,
    tool_version: String,
    fingerprint: String,
    q: u32,
    key: FusionKey,
    counts: Vec<Option<Vec<u32>>>,
}

/// Build the fusion table by the literal |G|-sweep (parallel over index
/// ranges of the ambient matrix space).
pub fn build_fusion(eng: &Engine, key: FusionKey) -> FusionTable {
    let t = eng.tower();
    let q = t.q;
    let elems = enumerate_subgroup(t, key);
    let index: HashMap<Mat3, u32> = elems
        .iter()
        .enumerate()
        .map(|(i, h)| (h.mat, i as u32))
        .collect();
    assert_eq!(index.len(), elems.len(), "subgroup enumeration collision");

    let classes = eng.classes();
    let charpolys: HashSet<(u8, u8, u8)> = elems.iter().map(|h| h.mat.char_poly(t)).collect();
    let possible: Vec<(usize, Mat3)> = classes
        .list
        .iter()
        .enumerate()
        .filter(|(_, d)| charpolys.contains(&d.representative.char_poly(t)))
        .map(|(i, d)| (i, d.representative))
        .collect();

    let total = (q as u64).pow(9);
    let nchunks = (rayon::current_num_threads() * 8).max(1) as u64;
    let chunk = total / nchunks + 1;
    let merged: Vec<Vec<u32>> = (0..nchunks)
        .into_par_iter()
        .map(|ci| {
            let lo = ci * chunk;
            let hi = ((ci + 1) * chunk).min(total);
            let mut local: Vec<Vec<u32>> = possible.iter().map(|_| vec![0u32; elems.len()]).collect();
            for idx in lo..hi {
                let x = Mat3::from_index(idx, q);
                if x.det(t) == 0 {
                    continue;
                }
                let xi = x.inverse(t).unwrap();
                for (pi, &(_, rep)) in possible.iter().enumerate() {
                    let y = x.mul(&rep, t).mul(&xi, t);
                    if let Some(&hi_idx) = index.get(&y) {
                        local[pi][hi_idx as usize] += 1;
                    }
                }
            }
            local
        })
        .reduce(
            || possible.iter().map(|_| vec![0u32; elems.len()]).collect(),
            |mut a, b| {
                for (av, bv) in a.iter_mut().zip(b) {
                    for (x, y) in av.iter_mut().zip(bv) {
                        *x += y;
                    }
                }
                a
            },
        );

    let mut counts: Vec<Option<Vec<u32>>> = vec![None; classes.count()];
    for (pi, &(ci, _)) in possible.iter().enumerate() {
        counts[ci] = Some(merged[pi].clone());
    }

    let class_of_elem = elems
        .iter()
        .map(|h| classes.index_of(&classes.classify(t, &h.mat).unwrap()) as u32)
        .collect();

    FusionTable {
        key,
        elems,
        class_of_elem,
        counts,
        order: key.subgroup_order(q),
    }
}

/// Build the table, round-tripping through the engine's cache directory
/// when one is configured. Cache entries carry the tower fingerprint and
/// tool version and are recomputed on any mismatch.
pub fn build_or_load_fusion(eng: &Engine, key: FusionKey) -> FusionTable {
    let Some(dir) = eng.cache_dir.clone() else {
        return build_fusion(eng, key);
    };
    let path = dir.join(format!("fusion_q{}_{}.json", eng.q(), key.cache_stem()));
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(file) = serde_json::from_str::<FusionCacheFile>(&text) {
            if file.schema_version == 1
                && file.tool_version == crate::VERSION
                && file.fingerprint == eng.tower().fingerprint()
                && file.q == eng.q()
                && file.key == key
                && file.counts.len() == eng.class_count()
            {
                let t = eng.tower();
                let elems = enumerate_subgroup(t, key);
                let classes = eng.classes();
                let class_of_elem = elems
                    .iter()
                    .map(|h| classes.index_of(&classes.classify(t, &h.mat).unwrap()) as u32)
                    .collect();
                return FusionTable {
                    key,
                    elems,
                    class_of_elem,
                    counts: file.counts,
                    order: key.subgroup_order(eng.q()),
                };
            }
        }
    }
    let tbl = build_fusion(eng, key);
    let file = FusionCacheFile {
        schema_version: 1,
        tool_version: crate::VERSION.to_string(),
        fingerprint: eng.tower().fingerprint(),
        q: eng.q(),
        key,
        counts: tbl.counts.clone(),
    };
    let _ = std::fs::create_dir_all(&dir);
    if let Ok(json) = serde_json::to_string(&file) {
        let _ = std::fs::write(&path, json);
    }
    tbl
}

/// Induced class function by the Frobenius formula, evaluated through the
/// fusion table. Exactness of the division by |H| is asserted; failure
/// signals a membership or character bug.
pub fn induce_bruteforce(eng: &Engine, spec: &SubgroupSpec) -> Result<ClassFunction, Error> {
    if eng.q() > eng.bruteforce_limit {
        return Err(Error::UnsupportedQ {
            q: eng.q(),
            limit: eng.bruteforce_limit,
        });
    }
    let t = eng.tower();
    let m = eng.modulus();
    let tbl = eng.fusion(spec.fusion_key());
    let mut values = Vec::with_capacity(eng.class_count());
    for counts in &tbl.counts {
        match counts {
            None => values.push(CycValue::zero(m)),
            Some(cnts) => {
                let mut s = CycValue::zero(m);
                for (hi, &c) in cnts.iter().enumerate() {
                    if c > 0 {
                        s.add_assign(&spec.theta(t, m, &tbl.elems[hi]).scaled_int(c as i64));
                    }
                }
                values.push(s.exact_div_int(tbl.order)?);
            }
        }
    }
    Ok(ClassFunction {
        q: eng.q(),
        m,
        values,
    })
}

/// Closed-form induced characters from the three tori. Zero off the classes
/// the fusion sets reach; elsewhere the character orbit sum dictated by the
/// fusion structure, scaled per the Frobenius formula.
pub fn induce_torus_fast(eng: &Engine, spec: &SubgroupSpec) -> Result<ClassFunction, Error> {
    let t = eng.tower();
    let m = eng.modulus();
    let q = eng.q() as i64;
    let e1 = |k: u32| ExtElement::new(1, t.exp(1, k));
    let values: Vec<CycValue> = eng
        .classes()
        .list
        .iter()
        .map(|d| match (spec, &d.label) {
            (SubgroupSpec::TorusI { a, b, c }, ClassLabel::Central { a: ca }) => {
                let x = e1(*ca);
                let index = q * q * q * (q + 1) * (q * q + q + 1);
                a.value(t, m, x)
                    .mul(&b.value(t, m, x))
                    .mul(&c.value(t, m, x))
                    .scaled_int(index)
            }
            (SubgroupSpec::TorusI { a, b, c }, ClassLabel::Split2 { a: ca, b: cb }) => {
                let xa = e1(*ca);
                let xb = e1(*cb);
                let chs = [a, b, c];
                let mut s = CycValue::zero(m);
                for k in 0..3 {
                    let i = (k + 1) % 3;
                    let j = (k + 2) % 3;
                    s.add_assign(
                        &chs[i]
                            .value(t, m, xa)
                            .mul(&chs[j].value(t, m, xa))
                            .mul(&chs[k].value(t, m, xb)),
                    );
                }
                s.scaled_int(q * (q + 1))
            }
            (SubgroupSpec::TorusI { a, b, c }, ClassLabel::Split3 { a: ca, b: cb, c: cc }) => {
                let xs = [e1(*ca), e1(*cb), e1(*cc)];
                let chs = [a, b, c];
                let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
                let mut s = CycValue::zero(m);
                for p in perms {
                    s.add_assign(
                        &chs[0]
                            .value(t, m, xs[p[0]])
                            .mul(&chs[1].value(t, m, xs[p[1]]))
                            .mul(&chs[2].value(t, m, xs[p[2]])),
                    );
                }
                s
            }
            (SubgroupSpec::TorusI { .. }, _) => CycValue::zero(m),

            (SubgroupSpec::TorusM { lam, alpha }, ClassLabel::Central { a: ca }) => {
                let x = e1(*ca);
                let index = q * q * q * (q * q * q - 1);
                lam.value_base(t, m, x.index as u8)
                    .mul(&alpha.value(t, m, x))
                    .scaled_int(index)
            }
            (SubgroupSpec::TorusM { lam, alpha }, ClassLabel::Split2 { a: ca, b: cb }) => lam
                .value_base(t, m, t.exp(1, *ca) as u8)
                .mul(&alpha.value(t, m, e1(*cb)))
                .scaled_int(q * (q - 1)),
            (SubgroupSpec::TorusM { lam, alpha }, ClassLabel::Quad { kappa, a: ca }) => {
                let k = ExtElement::new(2, t.exp(2, *kappa));
                let kq = t.frobenius(k, 1);
                lam.value(t, m, k)
                    .add(&lam.value(t, m, kq))
                    .mul(&alpha.value(t, m, e1(*ca)))
            }
            (SubgroupSpec::TorusM { .. }, _) => CycValue::zero(m),

            (SubgroupSpec::TorusA { phi }, ClassLabel::Central { a: ca }) => {
                let index = q * q * q * (q - 1) * (q * q - 1);
                phi.value_base(t, m, t.exp(1, *ca) as u8).scaled_int(index)
            }
            (SubgroupSpec::TorusA { phi }, ClassLabel::Cubic { z }) => {
                let ze = ExtElement::new(3, t.exp(3, *z));
                let zq = t.frobenius(ze, 1);
                let zq2 = t.frobenius(ze, 2);
                phi.value(t, m, ze)
                    .add(&phi.value(t, m, zq))
                    .add(&phi.value(t, m, zq2))
            }
            (SubgroupSpec::TorusA { .. }, _) => CycValue::zero(m),

            (SubgroupSpec::ZPattern { .. }, _) => {
                panic!("no closed form for unipotent sources; use induce_bruteforce")
            }
        })
        .collect();
    Ok(ClassFunction {
        q: eng.q(),
        m,
        values,
    })
}

/// Induction from Z·N' sources; the brute-force path is the only one.
pub fn induce_gg(eng: &Engine, spec: &SubgroupSpec) -> Result<ClassFunction, Error> {
    match spec {
        SubgroupSpec::ZPattern { .. } => induce_bruteforce(eng, spec),
        _ => Err(Error::InvalidSpec(
            "induce_gg needs a Z-pattern specification".into(),
        )),
    }
}

/// Pick the best available route: closed form for tori, sweep otherwise.
pub fn induce(eng: &Engine, spec: &SubgroupSpec) -> Result<ClassFunction, Error> {
    match spec {
        SubgroupSpec::ZPattern { .. } => induce_bruteforce(eng, spec),
        _ => induce_torus_fast(eng, spec),
    }
}

/// The restriction side of Frobenius reciprocity:
/// (1/|H|) sum_{h in H} theta(h) conj(chi(h)).
pub fn restriction_inner(eng: &Engine, spec: &SubgroupSpec, chi: &ClassFunction) -> CycValue {
    let t = eng.tower();
    let m = eng.modulus();
    let tbl = eng.fusion(spec.fusion_key());
    let mut s = CycValue::zero(m);
    for (hi, h) in tbl.elems.iter().enumerate() {
        let ci = tbl.class_of_elem[hi] as usize;
        s.add_assign(&spec.theta(t, m, h).mul(&chi.values[ci].conjugate()));
    }
    let inv = num_rational::BigRational::new(1.into(), tbl.order.into());
    s.scale_rational(&inv);
    s
}

/// All linear characters of a torus, for exhaustive sweeps.
pub fn all_torus_specs(t: &FieldTower, key: FusionKey) -> Vec<SubgroupSpec> {
    let q = t.q;
    let mut out = Vec::new();
    match key {
        FusionKey::TorusI => {
            for a in 0..q - 1 {
                for b in 0..q - 1 {
                    for c in 0..q - 1 {
                        out.push(SubgroupSpec::torus_i(t, a, b, c));
                    }
                }
            }
        }
        FusionKey::TorusM => {
            for lam in 0..q * q - 1 {
                for alpha in 0..q - 1 {
                    out.push(SubgroupSpec::torus_m(t, lam, alpha));
                }
            }
        }
        FusionKey::TorusA => {
            for phi in 0..q * q * q - 1 {
                out.push(SubgroupSpec::torus_a(t, phi));
            }
        }
        FusionKey::ZPattern(_) => panic!("not a torus"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_order;

    #[test]
    fn pattern_subgroup_validity() {
        assert!(pattern_is_subgroup(PATTERN_FULL_N));
        assert!(pattern_is_subgroup(PATTERN_ZERO_X));
        assert!(pattern_is_subgroup(PATTERN_ZERO_Y));
        assert!(!pattern_is_subgroup(PATTERN_ZERO_Z));
        assert!(pattern_is_subgroup(PATTERN_ZERO_X | PATTERN_ZERO_Z));
        assert!(pattern_is_subgroup(0b111));
    }

    #[test]
    fn subgroup_enumeration_sizes() {
        let eng = Engine::shared(3);
        let t = eng.tower();
        for key in [
            FusionKey::TorusI,
            FusionKey::TorusM,
            FusionKey::TorusA,
            FusionKey::ZPattern(PATTERN_FULL_N),
            FusionKey::ZPattern(PATTERN_ZERO_X),
        ] {
            let elems = enumerate_subgroup(t, key);
            assert_eq!(elems.len() as u64, key.subgroup_order(3));
            for h in &elems {
                assert!(h.mat.det(t) != 0);
            }
        }
    }

    #[test]
    fn subgroup_characters_are_multiplicative() {
        // theta(h1 h2) = theta(h1) theta(h2) on random pairs, for each kind.
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let eng = Engine::shared(3);
        let t = eng.tower();
        let m = eng.modulus();
        let specs = [
            SubgroupSpec::torus_i(t, 1, 0, 1),
            SubgroupSpec::torus_m(t, 3, 1),
            SubgroupSpec::torus_a(t, 7),
            SubgroupSpec::zn(t, 1, 1),
            SubgroupSpec::zn1(t, 0, 2),
        ];
        for spec in specs {
            let elems = enumerate_subgroup(t, spec.fusion_key());
            let lookup: HashMap<Mat3, usize> = elems
                .iter()
                .enumerate()
                .map(|(i, h)| (h.mat, i))
                .collect();
            for _ in 0..50 {
                let i = rng.gen_range(0..elems.len());
                let j = rng.gen_range(0..elems.len());
                let prod = elems[i].mat.mul(&elems[j].mat, t);
                let k = lookup[&prod];
                let lhs = spec.theta(t, m, &elems[k]);
                let rhs = spec.theta(t, m, &elems[i]).mul(&spec.theta(t, m, &elems[j]));
                assert_eq!(lhs, rhs, "multiplicativity for {:?}", spec.fusion_key());
            }
        }
    }

    #[test]
    fn induced_degree_is_index_times_one() {
        let eng = Engine::shared(2);
        let t = eng.tower();
        for spec in [
            SubgroupSpec::torus_i(t, 0, 0, 0),
            SubgroupSpec::torus_a(t, 1),
            SubgroupSpec::zn(t, 0, 1),
            SubgroupSpec::zn1(t, 0, 1),
        ] {
            let ind = induce_bruteforce(&eng, &spec).unwrap();
            let idx = group_order(2) / spec.subgroup_order(2);
            assert_eq!(ind.values[0].to_integer(), Some(idx.into()));
        }
    }

    #[test]
    fn anisotropic_orbit_values() {
        // Trivial character of the anisotropic torus induces with value 3 on
        // the cubic classes (the three Galois translates each contribute 1)
        // and 0 on unipotent-type classes.
        let eng = Engine::shared(2);
        let t = eng.tower();
        let spec = SubgroupSpec::torus_a(t, 0);
        let ind = induce_bruteforce(&eng, &spec).unwrap();
        let classes = eng.classes();
        for (i, d) in classes.list.iter().enumerate() {
            match d.label {
                ClassLabel::Cubic { .. } => {
                    assert_eq!(ind.values[i].to_integer(), Some(3.into()));
                }
                ClassLabel::Jordan21 { .. } | ClassLabel::Jordan3 { .. } => {
                    assert!(ind.values[i].is_zero());
                }
                _ => {}
            }
        }
        // A nontrivial character still vanishes off T_a-reachable classes.
        let spec = SubgroupSpec::torus_a(t, 1);
        let ind = induce_bruteforce(&eng, &spec).unwrap();
        for (i, d) in classes.list.iter().enumerate() {
            if matches!(d.label, ClassLabel::Jordan21 { .. }) {
                assert!(ind.values[i].is_zero());
            }
        }
    }

    #[test]
    fn fusion_set_sizes_match_closed_forms() {
        // Total hit counts per class against the known fusion structure:
        // Weyl orbits for the tori, the Levi for the double-eigenvalue
        // class into the intermediate torus.
        let eng = Engine::shared(3);
        let q = 3u64;
        let sum_for = |key: FusionKey, ci: usize| -> u64 {
            let tbl = eng.fusion(key);
            tbl.counts[ci]
                .as_ref()
                .map(|c| c.iter().map(|&x| x as u64).sum())
                .unwrap_or(0)
        };
        for (i, d) in eng.classes().list.iter().enumerate() {
            match d.label {
                ClassLabel::Split3 { .. } => {
                    assert_eq!(sum_for(FusionKey::TorusI, i), (q - 1).pow(3) * 6);
                }
                ClassLabel::Cubic { .. } => {
                    assert_eq!(sum_for(FusionKey::TorusA, i), (q * q * q - 1) * 3);
                    assert_eq!(sum_for(FusionKey::TorusI, i), 0);
                    assert_eq!(sum_for(FusionKey::TorusM, i), 0);
                }
                ClassLabel::Split2 { .. } => {
                    // the Levi GL(2) x GL(1)
                    let gl2 = (q * q - 1) * (q * q - q);
                    assert_eq!(sum_for(FusionKey::TorusM, i), gl2 * (q - 1));
                    // three block embeddings of GL(2) x GL(1)
                    assert_eq!(sum_for(FusionKey::TorusI, i), 3 * gl2 * (q - 1));
                }
                ClassLabel::Quad { .. } => {
                    assert_eq!(sum_for(FusionKey::TorusM, i), (q * q - 1) * (q - 1) * 2);
                }
                ClassLabel::Jordan21 { .. } | ClassLabel::Jordan3 { .. } => {
                    assert_eq!(sum_for(FusionKey::TorusI, i), 0);
                    assert_eq!(sum_for(FusionKey::TorusM, i), 0);
                    assert_eq!(sum_for(FusionKey::TorusA, i), 0);
                }
                _ => {}
            }
        }
    }

    #[test]
    fn fast_equals_bruteforce_q2() {
        let eng = Engine::shared(2);
        let t = eng.tower();
        for key in [FusionKey::TorusI, FusionKey::TorusM, FusionKey::TorusA] {
            for spec in all_torus_specs(t, key) {
                let fast = induce_torus_fast(&eng, &spec).unwrap();
                let brute = induce_bruteforce(&eng, &spec).unwrap();
                assert!(fast.eq_exact(&brute), "{:?}", spec);
            }
        }
    }

    #[test]
    fn split_torus_trivial_character_at_split3() {
        // Value 6 on a fully split class: the Weyl group orbit has size 6.
        let eng = Engine::shared(4);
        let t = eng.tower();
        let spec = SubgroupSpec::torus_i(t, 0, 0, 0);
        let ind = induce_torus_fast(&eng, &spec).unwrap();
        let classes = eng.classes();
        for (i, d) in classes.list.iter().enumerate() {
            if matches!(d.label, ClassLabel::Split3 { .. }) {
                assert_eq!(ind.values[i].to_integer(), Some(6.into()));
            }
        }
    }
}
