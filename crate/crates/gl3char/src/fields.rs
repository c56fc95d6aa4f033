//! The field tower F_q ⊂ F_{q^2}, F_q ⊂ F_{q^3}.
//!
//! Elements are table indices: for the base field 0..q, for the extensions
//! 0..q^d with index c0 + c1*q (+ c2*q^2), the coefficient vector in the
//! basis {1,tau} resp. {1,sigma,sigma^2}. Both extensions are built directly
//! over F_q from the lexicographically smallest primitive polynomial
//! (coefficients compared low-degree first as integers), so towers are
//! reproducible across machines. Discrete logarithms are full tables against
//! the fixed generators g1, g2 = tau, g3 = sigma.

use crate::group::Mat3;
use crate::Error;

/// Default upper bound on q; construction above this is refused unless a
/// higher hard limit is passed explicitly.
pub const DEFAULT_Q_LIMIT: u32 = 9;

/// An element of one of the tower fields, tagged with its extension degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtElement {
    pub degree: u8,
    pub index: u16,
}

impl ExtElement {
    pub fn new(degree: u8, index: u16) -> ExtElement {
        ExtElement { degree, index }
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

pub struct FieldTower {
    pub p: u32,
    pub n: u32,
    pub q: u32,
    /// Defining polynomial of F_q over F_p (monic, low-degree first,
    /// including leading 1); empty when n = 1.
    pub f1: Vec<u8>,
    /// `x^2 + f2[1] x + f2[0]`, the defining polynomial of F_{q^2} over F_q.
    pub f2: [u8; 2],
    /// `x^3 + f3[2] x^2 + f3[1] x + f3[0]`.
    pub f3: [u8; 3],
    pub g1: u8,
    pub g2: u16,
    pub g3: u16,
    /// dlog_2(g1 embedded) = (q+1) * u2 with gcd(u2, q-1) = 1.
    pub u2: u32,
    /// dlog_3(g1 embedded) = (q^2+q+1) * u3 with gcd(u3, q-1) = 1.
    pub u3: u32,

    add1: Vec<u8>,
    mul1: Vec<u8>,
    neg1: Vec<u8>,
    inv1: Vec<u8>,
    dlog1: Vec<u32>,
    exp1: Vec<u8>,
    trace_p: Vec<u8>,

    mul2: Vec<u16>,
    frob2: Vec<u16>,
    dlog2: Vec<u32>,
    exp2: Vec<u16>,

    mul3: Vec<u16>,
    frob3: Vec<u16>,
    dlog3: Vec<u32>,
    exp3: Vec<u16>,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative order of `x` under the given multiplication, or None if 0.
fn order_under(mul: impl Fn(u16, u16) -> u16, one: u16, x: u16, cap: u32) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut acc = x;
    let mut ord = 1;
    while acc != one {
        acc = mul(acc, x);
        ord += 1;
        if ord > cap {
            return None;
        }
    }
    Some(ord)
}

impl FieldTower {
    /// Build the tower for q = p^n with the default size limit.
    pub fn make(p: u32, n: u32) -> Result<FieldTower, Error> {
        FieldTower::make_with_limit(p, n, DEFAULT_Q_LIMIT)
    }

    /// Build the tower with an explicit hard limit on q. Extension degrees
    /// above 3 for the base field are not supported.
    pub fn make_with_limit(p: u32, n: u32, limit: u32) -> Result<FieldTower, Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || n > 3 {
            return Err(Error::BadDegree(n));
        }
        let q = p.checked_pow(n).ok_or(Error::UnsupportedQ { q: u32::MAX, limit })?;
        if q > limit || q > 40 {
            return Err(Error::UnsupportedQ { q, limit: limit.min(40) });
        }

        let (add1, mul1, f1) = build_base_field(p, n, q);
        let neg1 = (0..q).map(|a| (0..q).find(|&b| add1[(a * q + b) as usize] == 0).unwrap() as u8).collect::<Vec<_>>();
        let inv1: Vec<u8> = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul1[(a * q + b) as usize] == 1).unwrap() as u8
                }
            })
            .collect();

        let g1 = find_base_generator(p, q, n, &mul1);
        let (exp1, dlog1) = build_dlog(q, g1 as u16, |a, b| mul1[(a as u32 * q + b as u32) as usize] as u16);
        let exp1: Vec<u8> = exp1.into_iter().map(|x| x as u8).collect();

        let trace_p = build_trace_to_prime(p, n, q, &add1, &mul1);

        let base = BaseOps { q, add1: &add1, mul1: &mul1, neg1: &neg1 };
        let f2 = find_primitive_poly(&base, 2);
        let f3 = find_primitive_poly(&base, 3);
        let f2arr = [f2[0], f2[1]];
        let f3arr = [f3[0], f3[1], f3[2]];

        let mul2 = build_ext_mul(&base, 2, &f2);
        let mul3 = build_ext_mul(&base, 3, &f3);

        let q2 = q * q;
        let q3 = q * q * q;
        let g2: u16 = q as u16; // tau = (0,1)
        let g3: u16 = q as u16; // sigma = (0,1,0)
        let (exp2, dlog2) = build_dlog(q2, g2, |a, b| mul2[(a as u32 * q2 + b as u32) as usize]);
        let (exp3, dlog3) = build_dlog(q3, g3, |a, b| mul3[(a as u32 * q3 + b as u32) as usize]);

        let frob2 = build_frobenius(q2, q, &exp2, &dlog2);
        let frob3 = build_frobenius(q3, q, &exp3, &dlog3);

        // Exponent transport constants for restriction / extension of
        // multiplicative characters: g1 embeds as g_d^{t_d * u_d}.
        let t2 = q + 1;
        let t3 = q * q + q + 1;
        let d2 = dlog2[g1 as usize];
        let d3 = dlog3[g1 as usize];
        assert_eq!(d2 % t2, 0, "embedded base generator order");
        assert_eq!(d3 % t3, 0, "embedded base generator order");
        let u2 = d2 / t2;
        let u3 = d3 / t3;
        assert_eq!(num_integer::gcd(u2, q - 1), 1);
        assert_eq!(num_integer::gcd(u3, q - 1), 1);

        let tower = FieldTower {
            p,
            n,
            q,
            f1,
            f2: f2arr,
            f3: f3arr,
            g1,
            g2,
            g3,
            u2,
            u3,
            add1,
            mul1,
            neg1,
            inv1,
            dlog1,
            exp1,
            trace_p,
            mul2,
            frob2,
            dlog2,
            exp2,
            mul3,
            frob3,
            dlog3,
            exp3,
        };

        // Norms of the extension generators must again generate F_q^x.
        for d in [2u8, 3u8] {
            let gd = if d == 2 { tower.g2 } else { tower.g3 };
            let nm = tower.norm(ExtElement::new(d, gd)).index as u8;
            let e = tower.dlog1[nm as usize];
            assert_eq!(
                num_integer::gcd(e, q - 1),
                1,
                "norm of extension generator must be primitive"
            );
        }

        Ok(tower)
    }

    /// A short self-describing identifier of the construction: prime, degree,
    /// defining polynomials and generators. Stable across runs and machines.
    pub fn fingerprint(&self) -> String {
        let f1: Vec<String> = self.f1.iter().map(|c| c.to_string()).collect();
        format!(
            "p{}n{}q{}|f1:{}|f2:{},{}|f3:{},{},{}|g1:{}",
            self.p,
            self.n,
            self.q,
            f1.join(","),
            self.f2[0],
            self.f2[1],
            self.f3[0],
            self.f3[1],
            self.f3[2],
            self.g1
        )
    }

    /// Cyclotomic modulus housing all character values for this q.
    pub fn cyclotomic_modulus(&self) -> u32 {
        self.p * (self.q * self.q - 1) * (self.q * self.q + self.q + 1)
    }

    pub fn unit_order(&self, d: u8) -> u32 {
        self.q.pow(d as u32) - 1
    }

    // --- base field ---

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add1[(a as u32 * self.q + b as u32) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul1[(a as u32 * self.q + b as u32) as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg1[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv1[a as usize]
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut acc = 1u8;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Trace from F_q down to the prime field F_p.
    pub fn trace_to_prime(&self, a: u8) -> u8 {
        self.trace_p[a as usize]
    }

    // --- generic extension arithmetic (d = 1, 2, 3) ---

    pub fn ext_mul(&self, d: u8, a: u16, b: u16) -> u16 {
        match d {
            1 => self.mul(a as u8, b as u8) as u16,
            2 => self.mul2[(a as u32 * self.q * self.q + b as u32) as usize],
            3 => self.mul3[(a as u32 * self.q * self.q * self.q + b as u32) as usize],
            _ => unreachable!(),
        }
    }

    pub fn ext_add(&self, d: u8, a: u16, b: u16) -> u16 {
        let q = self.q as u16;
        match d {
            1 => self.add(a as u8, b as u8) as u16,
            2 => {
                let (a0, a1) = (a % q, a / q);
                let (b0, b1) = (b % q, b / q);
                self.add(a0 as u8, b0 as u8) as u16 + q * self.add(a1 as u8, b1 as u8) as u16
            }
            3 => {
                let (a0, a1, a2) = (a % q, (a / q) % q, a / (q * q));
                let (b0, b1, b2) = (b % q, (b / q) % q, b / (q * q));
                self.add(a0 as u8, b0 as u8) as u16
                    + q * self.add(a1 as u8, b1 as u8) as u16
                    + q * q * self.add(a2 as u8, b2 as u8) as u16
            }
            _ => unreachable!(),
        }
    }

    pub fn ext_pow(&self, d: u8, a: u16, mut e: u64) -> u16 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let mut acc = 1u16;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ext_mul(d, acc, base);
            }
            base = self.ext_mul(d, base, base);
            e >>= 1;
        }
        acc
    }

    /// Discrete log against the canonical generator; zero has none.
    pub fn dlog(&self, d: u8, a: u16) -> Result<u32, Error> {
        if a == 0 {
            return Err(Error::ZeroElement);
        }
        Ok(match d {
            1 => self.dlog1[a as usize],
            2 => self.dlog2[a as usize],
            3 => self.dlog3[a as usize],
            _ => unreachable!(),
        })
    }

    pub fn exp(&self, d: u8, k: u32) -> u16 {
        let m = self.unit_order(d);
        let k = k % m;
        match d {
            1 => self.exp1[k as usize] as u16,
            2 => self.exp2[k as usize],
            3 => self.exp3[k as usize],
            _ => unreachable!(),
        }
    }

    /// F_q into F_{q^d}: the coefficient vector (a, 0, ..).
    pub fn embed(&self, _d: u8, a: u8) -> u16 {
        a as u16
    }

    /// Coefficient vector over F_q, padded to length 3.
    pub fn coeffs(&self, d: u8, a: u16) -> [u8; 3] {
        let q = self.q as u16;
        match d {
            1 => [a as u8, 0, 0],
            2 => [(a % q) as u8, (a / q) as u8, 0],
            3 => [(a % q) as u8, ((a / q) % q) as u8, (a / (q * q)) as u8],
            _ => unreachable!(),
        }
    }

    /// x -> x^{q^k}, the relative Frobenius; identity on the base field.
    pub fn frobenius(&self, x: ExtElement, k: u32) -> ExtElement {
        let d = x.degree;
        if d == 1 || x.index == 0 {
            return x;
        }
        let k = k % d as u32;
        let mut idx = x.index;
        let table = if d == 2 { &self.frob2 } else { &self.frob3 };
        for _ in 0..k {
            idx = table[idx as usize];
        }
        ExtElement::new(d, idx)
    }

    /// Norm down to F_q: x * x^q * ... * x^{q^{d-1}}; 0 maps to 0.
    pub fn norm(&self, x: ExtElement) -> ExtElement {
        let d = x.degree;
        if x.index == 0 {
            return ExtElement::new(1, 0);
        }
        let mut acc = x.index;
        let mut conj = x;
        for _ in 1..d {
            conj = self.frobenius(conj, 1);
            acc = self.ext_mul(d, acc, conj.index);
        }
        let c = self.coeffs(d, acc);
        debug_assert!(c[1] == 0 && c[2] == 0, "norm must land in the base field");
        ExtElement::new(1, c[0] as u16)
    }

    /// Relative trace to F_q: x + x^q (+ x^{q^2}).
    pub fn rel_trace(&self, x: ExtElement) -> u8 {
        let d = x.degree;
        let mut acc = x.index;
        let mut conj = x;
        for _ in 1..d {
            conj = self.frobenius(conj, 1);
            acc = self.ext_add(d, acc, conj.index);
        }
        let c = self.coeffs(d, acc);
        debug_assert!(c[1] == 0 && c[2] == 0);
        c[0]
    }

    /// 3x3 matrix of multiplication by z on F_{q^3} in the basis
    /// {1, sigma, sigma^2}; its image is the anisotropic torus.
    pub fn embed_cubic(&self, z: ExtElement) -> Result<Mat3, Error> {
        assert_eq!(z.degree, 3);
        if z.index == 0 {
            return Err(Error::ZeroElement);
        }
        let sigma = self.g3;
        let mut m = Mat3::zero();
        let mut basis = 1u16; // sigma^j
        for j in 0..3 {
            let col = self.ext_mul(3, z.index, basis);
            let c = self.coeffs(3, col);
            for i in 0..3 {
                m.e[i][j] = c[i];
            }
            basis = self.ext_mul(3, basis, sigma);
        }
        Ok(m)
    }

    /// Block matrix diag(M_w, a) with M_w multiplication by w on F_{q^2} in
    /// the basis {1, tau}; the image over all (w, a) is the intermediate torus.
    pub fn embed_quadratic(&self, w: ExtElement, a: u8) -> Result<Mat3, Error> {
        assert_eq!(w.degree, 2);
        if w.index == 0 || a == 0 {
            return Err(Error::ZeroElement);
        }
        let tau = self.g2;
        let mut m = Mat3::zero();
        let mut basis = 1u16;
        for j in 0..2 {
            let col = self.ext_mul(2, w.index, basis);
            let c = self.coeffs(2, col);
            m.e[0][j] = c[0];
            m.e[1][j] = c[1];
            basis = self.ext_mul(2, basis, tau);
        }
        m.e[2][2] = a;
        Ok(m)
    }
}

struct BaseOps<'a> {
    q: u32,
    add1: &'a [u8],
    mul1: &'a [u8],
    neg1: &'a [u8],
}

impl BaseOps<'_> {
    fn add(&self, a: u8, b: u8) -> u8 {
        self.add1[(a as u32 * self.q + b as u32) as usize]
    }
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul1[(a as u32 * self.q + b as u32) as usize]
    }
    fn neg(&self, a: u8) -> u8 {
        self.neg1[a as usize]
    }
}

/// Base field tables. For n = 1 this is arithmetic mod p; otherwise
/// F_p[x]/(f1) with f1 the lexicographically smallest primitive polynomial,
/// elements indexed by their base-p coefficient encoding.
fn build_base_field(p: u32, n: u32, q: u32) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
    if n == 1 {
        let mut add = vec![0u8; (q * q) as usize];
        let mut mul = vec![0u8; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = ((a + b) % p) as u8;
                mul[(a * q + b) as usize] = ((a * b) % p) as u8;
            }
        }
        return (add, mul, Vec::new());
    }

    let digits = |x: u32| -> Vec<u8> {
        let mut v = Vec::with_capacity(n as usize);
        let mut x = x;
        for _ in 0..n {
            v.push((x % p) as u8);
            x /= p;
        }
        v
    };
    let undigits = |v: &[u8]| -> u32 { v.iter().rev().fold(0u32, |acc, &d| acc * p + d as u32) };

    // Polynomial multiplication of coefficient vectors mod f over F_p.
    let mul_mod = |a: &[u8], b: &[u8], f: &[u8]| -> Vec<u8> {
        let deg = n as usize;
        let mut prod = vec![0u32; 2 * deg];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ai as u32 * bj as u32) % p;
            }
        }
        for i in (deg..2 * deg).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for k in 0..deg {
                // x^deg = -f[k] x^k
                let sub = (c * f[k] as u32) % p;
                prod[i - deg + k] = (prod[i - deg + k] + p - sub) % p;
            }
        }
        prod[..deg].iter().map(|&c| c as u8).collect()
    };

    // Find the lexicographically smallest primitive monic polynomial of
    // degree n over F_p (coefficients low-degree first).
    let mut chosen: Option<Vec<u8>> = None;
    'search: for code in 0..p.pow(n) {
        let f = digits(code);
        // Quick irreducibility: degree <= 3 reducible implies a root.
        let eval = |x: u32| -> u32 {
            let mut acc = 1u32; // leading coefficient
            for &c in f.iter().rev() {
                acc = (acc * x + c as u32) % p;
            }
            acc
        };
        if (0..p).any(|x| eval(x) == 0) {
            continue;
        }
        // Primitivity: x must have order q - 1.
        let xelem: Vec<u8> = (0..n).map(|i| if i == 1 { 1 } else { 0 }).collect();
        let one: Vec<u8> = (0..n).map(|i| if i == 0 { 1 } else { 0 }).collect();
        let mut acc = xelem.clone();
        for step in 1..q {
            if acc == one {
                if step == q - 1 {
                    chosen = Some(f);
                    break 'search;
                }
                break;
            }
            acc = mul_mod(&acc, &xelem, &f);
        }
    }
    let f = chosen.expect("a primitive polynomial always exists");

    let mut add = vec![0u8; (q * q) as usize];
    let mut mul = vec![0u8; (q * q) as usize];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let s: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| ((x as u32 + y as u32) % p) as u8).collect();
            add[(a * q + b) as usize] = undigits(&s) as u8;
            let m = mul_mod(&da, &db, &f);
            mul[(a * q + b) as usize] = undigits(&m) as u8;
        }
    }
    let mut f_full = f;
    f_full.push(1);
    (add, mul, f_full)
}

fn find_base_generator(p: u32, q: u32, n: u32, mul1: &[u8]) -> u8 {
    let mul = |a: u16, b: u16| mul1[(a as u32 * q + b as u32) as usize] as u16;
    if n == 1 {
        if q == 2 {
            return 1;
        }
        for g in 2..q {
            if order_under(mul, 1, g as u16, q) == Some(q - 1) {
                return g as u8;
            }
        }
        unreachable!("prime fields have primitive roots")
    }
    // The class of x has coefficient vector (0,1,..), i.e. index p, and is
    // primitive by the choice of f1.
    debug_assert_eq!(order_under(mul, 1, p as u16, q), Some(q - 1));
    p as u8
}

fn build_dlog(
    size: u32,
    g: u16,
    mul: impl Fn(u16, u16) -> u16,
) -> (Vec<u16>, Vec<u32>) {
    let order = size - 1;
    let mut exp = vec![0u16; order as usize];
    let mut dlog = vec![u32::MAX; size as usize];
    let mut acc = 1u16;
    for k in 0..order {
        exp[k as usize] = acc;
        assert_eq!(dlog[acc as usize], u32::MAX, "generator is not primitive");
        dlog[acc as usize] = k;
        acc = mul(acc, g);
    }
    assert_eq!(acc, 1, "generator order mismatch");
    (exp, dlog)
}

fn build_frobenius(size: u32, q: u32, exp: &[u16], dlog: &[u32]) -> Vec<u16> {
    let order = size - 1;
    let mut out = vec![0u16; size as usize];
    for x in 1..size {
        let e = dlog[x as usize] as u64;
        let fe = (e * q as u64) % order as u64;
        out[x as usize] = exp[fe as usize];
    }
    out
}

fn build_trace_to_prime(p: u32, n: u32, q: u32, add1: &[u8], mul1: &[u8]) -> Vec<u8> {
    if n == 1 {
        return (0..q as usize).map(|a| a as u8).collect();
    }
    let add = |a: u8, b: u8| add1[(a as u32 * q + b as u32) as usize];
    let mul = |a: u8, b: u8| mul1[(a as u32 * q + b as u32) as usize];
    let powp = |a: u8| {
        let mut acc = 1u8;
        for _ in 0..p {
            acc = mul(acc, a);
        }
        acc
    };
    (0..q)
        .map(|x| {
            let mut term = x as u8;
            let mut tr = term;
            for _ in 1..n {
                term = powp(term);
                tr = add(tr, term);
            }
            debug_assert!((tr as u32) < p, "trace must land in the prime field");
            tr
        })
        .collect()
}

/// Lexicographically smallest primitive monic polynomial of degree d over F_q.
/// Returns the low-degree-first coefficient vector without the leading 1.
fn find_primitive_poly(base: &BaseOps, d: u32) -> Vec<u8> {
    let q = base.q;
    let count = q.pow(d);
    'cand: for code in 0..count {
        let mut f = Vec::with_capacity(d as usize);
        let mut c = code;
        for _ in 0..d {
            f.push((c % q) as u8);
            c /= q;
        }
        // Root test suffices for irreducibility at degree 2 and 3.
        let eval = |x: u8| -> u8 {
            let mut acc = 1u8;
            for &cf in f.iter().rev() {
                acc = base.add(base.mul(acc, x), cf);
            }
            acc
        };
        for x in 0..q as u8 {
            if eval(x) == 0 {
                continue 'cand;
            }
        }
        // Primitivity of the root: multiply coefficient vectors mod f.
        let deg = d as usize;
        let mul_mod = |a: &[u8], b: &[u8]| -> Vec<u8> {
            let mut prod = vec![0u8; 2 * deg];
            for i in 0..deg {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..deg {
                    prod[i + j] = base.add(prod[i + j], base.mul(a[i], b[j]));
                }
            }
            for i in (deg..2 * deg).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                prod[i] = 0;
                for k in 0..deg {
                    prod[i - deg + k] = base.add(prod[i - deg + k], base.neg(base.mul(c, f[k])));
                }
            }
            prod.truncate(deg);
            prod
        };
        let mut x_el = vec![0u8; deg];
        x_el[1] = 1;
        let mut one = vec![0u8; deg];
        one[0] = 1;
        let order = count - 1;
        let mut acc = x_el.clone();
        let mut ok = false;
        for step in 1..=order {
            if acc == one {
                ok = step == order;
                break;
            }
            acc = mul_mod(&acc, &x_el);
        }
        if ok {
            return f;
        }
    }
    unreachable!("a primitive polynomial always exists")
}

fn build_ext_mul(base: &BaseOps, d: u32, f: &[u8]) -> Vec<u16> {
    let q = base.q;
    let size = q.pow(d);
    let deg = d as usize;
    let digits = |x: u32| -> Vec<u8> {
        let mut v = Vec::with_capacity(deg);
        let mut x = x;
        for _ in 0..deg {
            v.push((x % q) as u8);
            x /= q;
        }
        v
    };
    let undigits = |v: &[u8]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * q + c as u32) };
    let mut table = vec![0u16; (size * size) as usize];
    for a in 0..size {
        let da = digits(a);
        for b in a..size {
            let db = digits(b);
            let mut prod = vec![0u8; 2 * deg];
            for i in 0..deg {
                if da[i] == 0 {
                    continue;
                }
                for j in 0..deg {
                    prod[i + j] = base.add(prod[i + j], base.mul(da[i], db[j]));
                }
            }
            for i in (deg..2 * deg).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                prod[i] = 0;
                for k in 0..deg {
                    prod[i - deg + k] = base.add(prod[i - deg + k], base.neg(base.mul(c, f[k])));
                }
            }
            let v = undigits(&prod[..deg]) as u16;
            table[(a * size + b) as usize] = v;
            table[(b * size + a) as usize] = v;
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_2_1() {
        let t = FieldTower::make(2, 1).unwrap();
        assert_eq!(t.q, 2);
        // |F_8^x| = 7: sigma has order 7.
        let mut acc = t.g3;
        let mut ord = 1;
        while acc != 1 {
            acc = t.ext_mul(3, acc, t.g3);
            ord += 1;
        }
        assert_eq!(ord, 7);
    }

    #[test]
    fn tower_3_1_generator() {
        let t = FieldTower::make(3, 1).unwrap();
        assert_eq!(t.g1, 2);
    }

    #[test]
    fn tower_2_2_dlog_table() {
        let t = FieldTower::make(2, 2).unwrap();
        assert_eq!(t.q, 4);
        // F_{q^3} = F_64: complete dlog table of size 63.
        let mut seen = vec![false; 64];
        for k in 0..63 {
            let x = t.exp(3, k);
            assert!(!seen[x as usize]);
            seen[x as usize] = true;
            assert_eq!(t.dlog(3, x).unwrap(), k);
        }
        assert!(!seen[0]);
    }

    #[test]
    fn frobenius_fixes_base_and_has_order_d() {
        for (p, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let t = FieldTower::make(p, n).unwrap();
            for a in 0..t.q as u16 {
                for d in [2u8, 3u8] {
                    let x = ExtElement::new(d, t.embed(d, a as u8));
                    assert_eq!(t.frobenius(x, 1), x, "base field is fixed");
                }
            }
            let g3 = ExtElement::new(3, t.g3);
            assert_eq!(t.frobenius(g3, 3), g3);
        }
    }

    #[test]
    fn frobenius_squares_in_f8() {
        let t = FieldTower::make(2, 1).unwrap();
        let g3 = ExtElement::new(3, t.g3);
        let f = t.frobenius(g3, 1);
        assert_eq!(f.index, t.ext_mul(3, t.g3, t.g3));
    }

    #[test]
    fn norm_values() {
        // Cube on the base field for d = 3.
        let t = FieldTower::make(5, 1).unwrap();
        for a in 1..5u8 {
            let x = ExtElement::new(3, t.embed(3, a));
            assert_eq!(t.norm(x).index, t.pow(a, 3) as u16);
        }
        // q = 3: N_2(g2) = g2^4 has order 2, i.e. equals 2 in F_3.
        let t3 = FieldTower::make(3, 1).unwrap();
        assert_eq!(t3.norm(ExtElement::new(2, t3.g2)).index, 2);
        // Zero maps to zero.
        assert_eq!(t3.norm(ExtElement::new(3, 0)).index, 0);
    }

    #[test]
    fn dlog_is_a_homomorphism() {
        for (p, n) in [(2, 1), (3, 1), (2, 2)] {
            let t = FieldTower::make(p, n).unwrap();
            for d in [1u8, 2, 3] {
                let m = t.unit_order(d);
                let size = t.q.pow(d as u32) as u16;
                for a in 1..size {
                    for b in 1..size {
                        let l = (t.dlog(d, a).unwrap() + t.dlog(d, b).unwrap()) % m;
                        assert_eq!(t.dlog(d, t.ext_mul(d, a, b)).unwrap(), l);
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        for (p, n) in [(2, 1), (3, 1), (2, 2)] {
            let t = FieldTower::make(p, n).unwrap();
            for d in [2u8, 3] {
                let size = t.q.pow(d as u32) as u16;
                for a in 0..size {
                    for b in 0..size {
                        let fa = t.frobenius(ExtElement::new(d, a), 1).index;
                        let fb = t.frobenius(ExtElement::new(d, b), 1).index;
                        assert_eq!(t.frobenius(ExtElement::new(d, t.ext_mul(d, a, b)), 1).index, t.ext_mul(d, fa, fb));
                        assert_eq!(t.frobenius(ExtElement::new(d, t.ext_add(d, a, b)), 1).index, t.ext_add(d, fa, fb));
                    }
                }
            }
        }
    }

    #[test]
    fn embeddings_are_multiplicative_and_det_matches_norm() {
        for (p, n) in [(2, 1), (3, 1), (2, 2)] {
            let t = FieldTower::make(p, n).unwrap();
            let q3 = t.q.pow(3) as u16;
            for z in 1..q3 {
                let ez = t.embed_cubic(ExtElement::new(3, z)).unwrap();
                assert_eq!(ez.det(&t), t.norm(ExtElement::new(3, z)).index as u8);
            }
            // Multiplicativity on a full sweep for q <= 4.
            for z in 1..q3 {
                for w in [1u16, t.g3, t.ext_mul(3, t.g3, t.g3)] {
                    let l = t.embed_cubic(ExtElement::new(3, t.ext_mul(3, z, w))).unwrap();
                    let r = t
                        .embed_cubic(ExtElement::new(3, z))
                        .unwrap()
                        .mul(&t.embed_cubic(ExtElement::new(3, w)).unwrap(), &t);
                    assert_eq!(l, r);
                }
            }
            let q2 = t.q.pow(2) as u16;
            for w in 1..q2 {
                for a in 1..t.q as u8 {
                    let m = t.embed_quadratic(ExtElement::new(2, w), a).unwrap();
                    let nw = t.norm(ExtElement::new(2, w)).index as u8;
                    assert_eq!(m.det(&t), t.mul(nw, a));
                }
            }
        }
    }

    #[test]
    fn identity_embeddings() {
        let t = FieldTower::make(3, 1).unwrap();
        assert!(t.embed_cubic(ExtElement::new(3, 1)).unwrap().is_identity());
        assert!(t
            .embed_quadratic(ExtElement::new(2, 1), 1)
            .unwrap()
            .is_identity());
        assert!(t.embed_cubic(ExtElement::new(3, 0)).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(FieldTower::make(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(FieldTower::make(11, 1), Err(Error::UnsupportedQ { .. })));
        assert!(FieldTower::make_with_limit(11, 1, 13).is_ok());
    }
}
