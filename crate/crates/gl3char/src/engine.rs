//! Per-q computation context: the field tower plus lazily built, shared
//! caches for the class list, the irreducible table and fusion data.
//!
//! Everything cached here is immutable once built, so an [`Engine`] can be
//! shared freely across threads.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::chartable::{self, IrrLabel};
use crate::cyclo::CycValue;
use crate::fields::FieldTower;
use crate::group::{ClassData, ClassLabel};
use crate::induction::{FusionKey, FusionTable};
use crate::tensorlab::ClassFunction;
use crate::Error;

pub struct Engine {
    tower: FieldTower,
    m: u32,
    /// Brute-force induction refuses larger q unless overridden.
    pub bruteforce_limit: u32,
    pub cache_dir: Option<PathBuf>,
    classes: OnceLock<ClassData>,
    labels: OnceLock<Vec<IrrLabel>>,
    table: Mutex<HashMap<IrrLabel, Arc<ClassFunction>>>,
    fusion: Mutex<HashMap<FusionKey, Arc<FusionTable>>>,
}

/// Factor a prime power. Errors when q is not a prime power.
pub fn factor_prime_power(q: u32) -> Result<(u32, u32), Error> {
    if q < 2 {
        return Err(Error::UnsupportedQ { q, limit: 0 });
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut n = 0;
            let mut rest = q;
            while rest % p == 0 {
                rest /= p;
                n += 1;
            }
            if rest != 1 {
                return Err(Error::UnsupportedQ { q, limit: 0 });
            }
            return Ok((p, n));
        }
        p += 1;
    }
    Ok((q, 1))
}

impl Engine {
    pub fn new(p: u32, n: u32) -> Result<Engine, Error> {
        let tower = FieldTower::make(p, n)?;
        let m = tower.cyclotomic_modulus();
        Ok(Engine {
            tower,
            m,
            bruteforce_limit: 5,
            cache_dir: None,
            classes: OnceLock::new(),
            labels: OnceLock::new(),
            table: Mutex::new(HashMap::new()),
            fusion: Mutex::new(HashMap::new()),
        })
    }

    pub fn for_q(q: u32) -> Result<Engine, Error> {
        let (p, n) = factor_prime_power(q)?;
        Engine::new(p, n)
    }

    /// Process-wide shared engine for a given q, built once.
    pub fn shared(q: u32) -> Arc<Engine> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<Engine>>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = reg.lock().unwrap();
        map.entry(q)
            .or_insert_with(|| Arc::new(Engine::for_q(q).expect("supported q")))
            .clone()
    }

    pub fn q(&self) -> u32 {
        self.tower.q
    }

    /// The cyclotomic modulus M housing all character values at this q.
    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn group_order(&self) -> u64 {
        crate::group::group_order(self.tower.q)
    }

    pub fn classes(&self) -> &ClassData {
        self.classes.get_or_init(|| {
            let cd = ClassData::build(&self.tower);
            // The identity class must sit at index 0; class-function degree
            // lookups rely on it.
            debug_assert_eq!(cd.index_of(&ClassLabel::Central { a: 0 }), 0);
            cd
        })
    }

    pub fn class_count(&self) -> usize {
        self.classes().count()
    }

    pub fn irr_labels(&self) -> &[IrrLabel] {
        self.labels
            .get_or_init(|| chartable::all_irreducibles(&self.tower))
    }

    /// The exact class function of a generic irreducible label (memoized).
    pub fn irr(&self, label: &IrrLabel) -> Arc<ClassFunction> {
        let canon = label.canonicalize(&self.tower);
        if let Some(cf) = self.table.lock().unwrap().get(&canon) {
            return cf.clone();
        }
        let values: Vec<CycValue> = self
            .classes()
            .list
            .iter()
            .map(|d| {
                chartable::chi_value(&self.tower, self.m, &canon, &d.label)
                    .expect("generic label")
            })
            .collect();
        let cf = Arc::new(ClassFunction {
            q: self.tower.q,
            m: self.m,
            values,
        });
        self.table.lock().unwrap().insert(canon, cf.clone());
        cf
    }

    /// Exact inner product (1/|G|) * sum over classes of size * f * conj(g).
    pub fn inner(&self, f: &ClassFunction, g: &ClassFunction) -> CycValue {
        assert_eq!(f.q, self.tower.q);
        assert_eq!(g.q, self.tower.q);
        let classes = self.classes();
        let mut s = CycValue::zero(self.m);
        for (i, d) in classes.list.iter().enumerate() {
            let term = f.values[i].mul(&g.values[i].conjugate());
            s.add_assign(&term.scaled_int(d.size as i64));
        }
        let inv = BigRational::new(BigInt::from(1), BigInt::from(self.group_order()));
        s.scale_rational(&inv);
        s
    }

    /// Fusion data for a subgroup kind, built on first use. When a cache
    /// directory is configured, tables round-trip through it.
    pub fn fusion(&self, key: FusionKey) -> Arc<FusionTable> {
        if let Some(tbl) = self.fusion.lock().unwrap().get(&key) {
            return tbl.clone();
        }
        let tbl = Arc::new(crate::induction::build_or_load_fusion(self, key));
        self.fusion.lock().unwrap().insert(key, tbl.clone());
        tbl
    }
}
