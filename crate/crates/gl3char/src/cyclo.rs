//! Exact arithmetic in the cyclotomic field Q(zeta_M).
//!
//! Every character value handled by this crate lives in Q(zeta_M) with
//! M = p*(q^2-1)*(q^2+q+1), the least common multiple of the character
//! orders in play (q-1, q^2-1, q^3-1 and p).
//!
//! A [`CycValue`] is kept as a sparse sum `sum_k c_k * zeta_M^k` with
//! rational coefficients; products and sums stay in this pre-form and
//! only equality / integrality tests reduce to the canonical form, the
//! remainder modulo the M-th cyclotomic polynomial Phi_M. Since Phi_M
//! is monic with integer coefficients, integer inputs keep integer
//! canonical coordinates, and equality is coefficient-wise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::Error;

/// Dense integer polynomial, coefficients low degree first.
type Poly = Vec<i64>;

fn poly_trim(p: &mut Poly) {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
}

/// Exact division of integer polynomials; panics if the division is not exact.
fn poly_div_exact(num: &Poly, den: &Poly) -> Poly {
    assert!(*den.last().unwrap() == 1, "divisor must be monic");
    let mut rem = num.clone();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dd];
    for e in (dd..rem.len()).rev() {
        let c = rem[e];
        if c == 0 {
            continue;
        }
        quot[e - dd] = c;
        for (i, &dc) in den.iter().enumerate() {
            rem[e - dd + i] -= c * dc;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    poly_trim(&mut quot);
    quot
}

/// Substitute x -> x^k in a polynomial.
fn poly_stretch(p: &Poly, k: usize) -> Poly {
    let mut out = vec![0i64; (p.len() - 1) * k + 1];
    for (i, &c) in p.iter().enumerate() {
        out[i * k] = c;
    }
    out
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Compute the n-th cyclotomic polynomial.
///
/// Phi over the squarefree radical is built by iterated division
/// Phi_{mp}(x) = Phi_m(x^p)/Phi_m(x), then Phi_n(x) = Phi_rad(x^{n/rad}).
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![-1, 1];
    }
    let primes = prime_factors(n);
    let rad: u64 = primes.iter().product();
    let p0 = primes[0];
    let mut phi: Poly = vec![1; p0 as usize]; // Phi_p = 1 + x + ... + x^{p-1}
    for &p in &primes[1..] {
        let stretched = poly_stretch(&phi, p as usize);
        phi = poly_div_exact(&stretched, &phi);
    }
    if rad < n {
        phi = poly_stretch(&phi, (n / rad) as usize);
    }
    phi
}

/// Shared per-modulus context: Phi_M and derived reduction data.
pub struct CycCtx {
    pub modulus: u32,
    /// deg Phi_M = phi(M); canonical coordinates have this length.
    pub degree: usize,
    /// Nonzero coefficients of Phi_M below the (monic) leading term.
    phi_tail: Vec<(usize, i64)>,
}

impl CycCtx {
    fn new(m: u32) -> CycCtx {
        let phi = cyclotomic_poly(m as u64);
        let degree = phi.len() - 1;
        assert_eq!(phi[degree], 1);
        let phi_tail: Vec<(usize, i64)> = phi[..degree]
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        CycCtx {
            modulus: m,
            degree,
            phi_tail,
        }
    }

    /// Fetch (building on first use) the shared context for modulus `m`.
    pub fn get(m: u32) -> Arc<CycCtx> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<CycCtx>>>> = OnceLock::new();
        let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
        let mut map = reg.lock().unwrap();
        map.entry(m).or_insert_with(|| Arc::new(CycCtx::new(m))).clone()
    }

    /// Reduce a dense i128 coefficient vector (length M) modulo Phi_M.
    /// Returns None on i128 overflow, in which case the caller retries
    /// with arbitrary-precision coefficients.
    fn reduce_i128(&self, v: &mut [i128]) -> Option<()> {
        for e in (self.degree..v.len()).rev() {
            let c = v[e];
            if c == 0 {
                continue;
            }
            v[e] = 0;
            let base = e - self.degree;
            for &(i, co) in &self.phi_tail {
                let t = c.checked_mul(co as i128)?;
                v[base + i] = v[base + i].checked_sub(t)?;
            }
        }
        Some(())
    }

    fn reduce_big(&self, v: &mut [BigRational]) {
        for e in (self.degree..v.len()).rev() {
            if v[e].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut v[e], BigRational::zero());
            let base = e - self.degree;
            for &(i, co) in &self.phi_tail {
                let t = &c * BigRational::from_integer(BigInt::from(co));
                v[base + i] -= t;
            }
        }
    }
}

/// An exact element of Q(zeta_M), stored as a sparse sum of rational
/// multiples of roots of unity.
#[derive(Clone)]
pub struct CycValue {
    m: u32,
    terms: BTreeMap<u32, BigRational>,
}

impl CycValue {
    pub fn zero(m: u32) -> CycValue {
        CycValue {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(m: u32) -> CycValue {
        CycValue::from_int(m, 1)
    }

    pub fn from_int(m: u32, n: i64) -> CycValue {
        let mut v = CycValue::zero(m);
        if n != 0 {
            v.terms.insert(0, BigRational::from_integer(BigInt::from(n)));
        }
        v
    }

    pub fn from_rational(m: u32, r: BigRational) -> CycValue {
        let mut v = CycValue::zero(m);
        if !r.is_zero() {
            v.terms.insert(0, r);
        }
        v
    }

    /// zeta_M^k (k taken modulo M, negatives allowed).
    pub fn root_of_unity(m: u32, k: i64) -> CycValue {
        let k = k.rem_euclid(m as i64) as u32;
        let mut v = CycValue::zero(m);
        v.terms.insert(k, BigRational::one());
        v
    }

    pub fn modulus(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &BTreeMap<u32, BigRational> {
        &self.terms
    }

    fn insert_term(&mut self, k: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(k) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &CycValue) {
        assert_eq!(self.m, other.m, "cyclotomic modulus mismatch");
        for (&k, c) in &other.terms {
            self.insert_term(k, c.clone());
        }
    }

    pub fn add(&self, other: &CycValue) -> CycValue {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &CycValue) -> CycValue {
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.insert_term(k, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> CycValue {
        let mut out = CycValue::zero(self.m);
        for (&k, c) in &self.terms {
            out.terms.insert(k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &CycValue) -> CycValue {
        assert_eq!(self.m, other.m, "cyclotomic modulus mismatch");
        let mut out = CycValue::zero(self.m);
        for (&k1, c1) in &self.terms {
            for (&k2, c2) in &other.terms {
                let k = (k1 + k2) % self.m;
                out.insert_term(k, c1 * c2);
            }
        }
        out
    }

    /// Multiply in place by an integer.
    pub fn scale_int(&mut self, n: i64) {
        if n == 0 {
            self.terms.clear();
            return;
        }
        let f = BigRational::from_integer(BigInt::from(n));
        for c in self.terms.values_mut() {
            *c *= &f;
        }
    }

    pub fn scaled_int(&self, n: i64) -> CycValue {
        let mut out = self.clone();
        out.scale_int(n);
        out
    }

    pub fn scale_rational(&mut self, r: &BigRational) {
        if r.is_zero() {
            self.terms.clear();
            return;
        }
        for c in self.terms.values_mut() {
            *c *= r;
        }
    }

    /// Complex conjugation: zeta^k -> zeta^{M-k}.
    pub fn conjugate(&self) -> CycValue {
        let mut out = CycValue::zero(self.m);
        for (&k, c) in &self.terms {
            let kk = if k == 0 { 0 } else { self.m - k };
            out.insert_term(kk, c.clone());
        }
        out
    }

    /// Canonical coordinates: the remainder modulo Phi_M, as a vector of
    /// length phi(M) in the basis 1, zeta, ..., zeta^{phi(M)-1}.
    pub fn canonical(&self) -> Vec<BigRational> {
        let ctx = CycCtx::get(self.m);
        // Fast path: integer coefficients within i128 range.
        let mut ints: Option<Vec<i128>> = Some(vec![0i128; self.m as usize]);
        for (&k, c) in &self.terms {
            if !c.denom().is_one() {
                ints = None;
                break;
            }
            match c.numer().to_i128() {
                Some(n) => {
                    if let Some(v) = ints.as_mut() {
                        v[k as usize] = n;
                    }
                }
                None => {
                    ints = None;
                    break;
                }
            }
        }
        if let Some(mut v) = ints {
            if ctx.reduce_i128(&mut v).is_some() {
                return v[..ctx.degree]
                    .iter()
                    .map(|&n| BigRational::from_integer(BigInt::from(n)))
                    .collect();
            }
        }
        // General path.
        let mut v = vec![BigRational::zero(); self.m as usize];
        for (&k, c) in &self.terms {
            v[k as usize] = c.clone();
        }
        ctx.reduce_big(&mut v);
        v.truncate(ctx.degree);
        v
    }

    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        self.canonical().iter().all(|c| c.is_zero())
    }

    /// If the value is a rational integer, return it.
    pub fn to_integer(&self) -> Option<BigInt> {
        let can = self.canonical();
        if can[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        if !can[0].denom().is_one() {
            return None;
        }
        Some(can[0].numer().clone())
    }

    /// Divide by a nonzero integer, requiring the result to stay an
    /// algebraic integer (all canonical coordinates divisible).
    pub fn exact_div_int(&self, n: u64) -> Result<CycValue, Error> {
        assert!(n != 0);
        let can = self.canonical();
        let nn = BigInt::from(n);
        let mut out = CycValue::zero(self.m);
        for (i, c) in can.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !c.denom().is_one() || (c.numer() % &nn) != BigInt::zero() {
                return Err(Error::InexactDivision {
                    divisor: n,
                    coefficient: c.to_string(),
                    position: i,
                });
            }
            out.terms.insert(
                i as u32,
                BigRational::from_integer(c.numer() / &nn),
            );
        }
        Ok(out)
    }

    /// Floating point image under zeta_M -> e^{2 pi i / M}.
    pub fn approx(&self) -> num_complex::Complex64 {
        let mut z = num_complex::Complex64::new(0.0, 0.0);
        let m = self.m as f64;
        for (&k, c) in &self.terms {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / m;
            let cf = c.to_f64().unwrap_or(f64::NAN);
            z += num_complex::Complex64::new(ang.cos() * cf, ang.sin() * cf);
        }
        z
    }

    /// JSON rendering: sparse terms plus a decimal approximation.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&k, c)| serde_json::json!([k, c.to_string()]))
            .collect();
        let a = self.approx();
        serde_json::json!({ "m": self.m, "terms": terms, "approx": [a.re, a.im] })
    }
}

impl PartialEq for CycValue {
    fn eq(&self, other: &Self) -> bool {
        self.sub(other).is_zero()
    }
}

impl fmt::Debug for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z{}^{}", self.m, k)?;
            } else {
                write!(f, "{}*z{}^{}", c, self.m, k)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
