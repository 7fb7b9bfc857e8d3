//! Prime fields F_p and extension fields F_{p^e}.
//!
//! An element of F_{p^e} is the residue class of a polynomial of degree < e
//! over F_p. Internally it is packed into one `u32` as the base-`p` integer
//! whose digits are its coefficients (constant coefficient least
//! significant). Zero is always `0` and the prime subfield is `0..p`, which
//! lets the polynomial kernels treat coefficients as plain integers.
//!
//! The supported budget is `p < 2^31` and `q = p^e < 2^32`. Arithmetic is
//! table driven for `q <= 2^22` (full tables up to 256 elements, Zech
//! logarithms above) and falls back to modular or vector arithmetic beyond
//! that.

mod embed;
pub(crate) mod fp_poly;

pub use embed::Embedding;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use rand::Rng;

use crate::error::{Error, Result};

const FULL_TABLE_MAX: u32 = 256;
const LOG_TABLE_MAX: u32 = 1 << 22;
const NO_LOG: u32 = u32::MAX;

/// Description of F_{p^e}: characteristic, degree and defining modulus.
///
/// Cheap to clone; all clones share the arithmetic tables.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: u32,
    arith: Arith,
    embeddings: RwLock<HashMap<u32, Arc<Embedding>>>,
}

enum Arith {
    /// q <= 256: every operation is a lookup.
    Table {
        add: Vec<u32>,
        mul: Vec<u32>,
        neg: Vec<u32>,
        inv: Vec<u32>,
        frob: Vec<u32>,
    },
    /// Extension fields with q <= 2^22: logarithms plus Zech logarithms for
    /// odd characteristic (characteristic 2 adds by xor).
    Log {
        log: Vec<u32>,
        exp: Vec<u32>,
        zech: Vec<u32>,
    },
    /// Prime fields above the table limit.
    Prime,
    /// Large extension fields: schoolbook arithmetic modulo the modulus.
    Vector,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Decompose `q` as `p^e`; `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = *prime_factors(q).first()?;
    let mut rest = q;
    let mut e = 0u32;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    if rest == 1 && p < (1 << 31) {
        Some((p as u32, e))
    } else {
        None
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u32, u32), FieldSpec>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldSpec>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Construct F_{p^e} with the canonical modulus: the lexicographically
/// smallest monic irreducible of degree `e`, scanning coefficient vectors in
/// ascending order with the constant coefficient varying fastest. For `e = 1`
/// the modulus is `x`.
///
/// Fields are cached, so repeated calls return the same shared instance.
pub fn make_field(p: u64, e: u32) -> Result<FieldSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e < 1 {
        return Err(Error::BadDegree(e));
    }
    let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
    if p >= (1 << 31) || q > u32::MAX as u128 {
        return Err(Error::FieldTooLarge { p: p as u32, e });
    }
    let p = p as u32;
    if let Some(f) = field_cache().lock().unwrap().get(&(p, e)) {
        return Ok(f.clone());
    }
    let built = FieldSpec::build(p, e, q as u32);
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry((p, e)).or_insert(built).clone())
}

/// Field of order `q`, which must be a prime power.
pub fn field_of_order(q: u64) -> Result<FieldSpec> {
    let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    make_field(p as u64, e)
}

fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    if e == 1 {
        return vec![0, 1];
    }
    let count = (p as u64).pow(e);
    for n in 0..count {
        let mut f = Vec::with_capacity(e as usize + 1);
        let mut rest = n;
        for _ in 0..e {
            f.push((rest % p as u64) as u32);
            rest /= p as u64;
        }
        f.push(1);
        if fp_poly::is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Vector-form multiplication of packed elements.
fn vec_mul(a: u32, b: u32, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let da = fp_poly::unpack(a, p, e);
    let db = fp_poly::unpack(b, p, e);
    fp_poly::pack(&fp_poly::mulmod_poly(&da, &db, modulus, p), p)
}

fn vec_add(a: u32, b: u32, p: u32, e: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    let da = fp_poly::unpack(a, p, e);
    let db = fp_poly::unpack(b, p, e);
    let s: Vec<u32> = da
        .iter()
        .zip(&db)
        .map(|(&x, &y)| fp_poly::addmod(x, y, p))
        .collect();
    fp_poly::pack(&s, p)
}

fn vec_neg(a: u32, p: u32, e: u32) -> u32 {
    if p == 2 {
        return a;
    }
    let d: Vec<u32> = fp_poly::unpack(a, p, e)
        .into_iter()
        .map(|x| fp_poly::submod(0, x, p))
        .collect();
    fp_poly::pack(&d, p)
}

fn vec_pow(a: u32, mut k: u64, p: u32, e: u32, modulus: &[u32]) -> u32 {
    let mut acc = 1u32;
    let mut base = a;
    while k > 0 {
        if k & 1 == 1 {
            acc = vec_mul(acc, base, p, e, modulus);
        }
        base = vec_mul(base, base, p, e, modulus);
        k >>= 1;
    }
    acc
}

/// Smallest primitive element in packed order.
fn find_generator(p: u32, e: u32, q: u32, modulus: &[u32]) -> u32 {
    if q == 2 {
        return 1;
    }
    let order = q as u64 - 1;
    let factors = prime_factors(order);
    let is_primitive = |g: u32| {
        factors.iter().all(|&l| {
            if e == 1 {
                fp_poly::powmod(g, order / l, p) != 1
            } else {
                vec_pow(g, order / l, p, e, modulus) != 1
            }
        })
    };
    (1..q)
        .find(|&g| is_primitive(g))
        .expect("multiplicative group is cyclic")
}

impl FieldSpec {
    fn build(p: u32, e: u32, q: u32) -> FieldSpec {
        let modulus = canonical_modulus(p, e);
        let generator = find_generator(p, e, q, &modulus);
        let arith = if q <= FULL_TABLE_MAX {
            Self::full_tables(p, e, q, &modulus)
        } else if e == 1 {
            Arith::Prime
        } else if q <= LOG_TABLE_MAX {
            Self::log_tables(p, e, q, &modulus, generator)
        } else {
            Arith::Vector
        };
        FieldSpec {
            inner: Arc::new(FieldInner {
                p,
                e,
                q,
                modulus,
                generator,
                arith,
                embeddings: RwLock::new(HashMap::new()),
            }),
        }
    }

    fn full_tables(p: u32, e: u32, q: u32, modulus: &[u32]) -> Arith {
        let n = q as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..q {
            for b in 0..q {
                add[a as usize * n + b as usize] = vec_add(a, b, p, e);
                mul[a as usize * n + b as usize] = vec_mul(a, b, p, e, modulus);
            }
        }
        let neg = (0..q).map(|a| vec_neg(a, p, e)).collect();
        let mut inv = vec![0u32; n];
        for a in 1..q {
            inv[a as usize] = (1..q)
                .find(|&b| mul[a as usize * n + b as usize] == 1)
                .expect("nonzero elements are invertible");
        }
        let frob = (0..q)
            .map(|a| vec_pow(a, p as u64, p, e, modulus))
            .collect();
        Arith::Table {
            add,
            mul,
            neg,
            inv,
            frob,
        }
    }

    fn log_tables(p: u32, e: u32, q: u32, modulus: &[u32], generator: u32) -> Arith {
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order];
        let mut log = vec![NO_LOG; q as usize];
        // Multiply by the generator in digit form with a fixed scratch buffer.
        let g = fp_poly::unpack(generator, p, e);
        let g_terms: Vec<(usize, u32)> = g
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let eu = e as usize;
        let mut cur = vec![0u32; eu];
        cur[0] = 1;
        let mut scratch = vec![0u32; 2 * eu];
        for (i, slot) in exp.iter_mut().take(order).enumerate() {
            let packed = fp_poly::pack(&cur, p);
            *slot = packed;
            log[packed as usize] = i as u32;
            scratch.iter_mut().for_each(|s| *s = 0);
            for (j, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for &(k, gk) in &g_terms {
                    scratch[j + k] = fp_poly::addmod(scratch[j + k], fp_poly::mulmod(c, gk, p), p);
                }
            }
            for top in (eu..2 * eu).rev() {
                let c = scratch[top];
                if c == 0 {
                    continue;
                }
                // modulus is monic: subtract c * x^{top-e} * modulus
                for (k, &mk) in modulus.iter().enumerate().take(eu) {
                    let idx = top - eu + k;
                    scratch[idx] = fp_poly::submod(scratch[idx], fp_poly::mulmod(c, mk, p), p);
                }
                scratch[top] = 0;
            }
            cur.copy_from_slice(&scratch[..eu]);
        }
        for i in 0..order {
            exp[order + i] = exp[i];
        }
        let zech = if p == 2 {
            Vec::new()
        } else {
            (0..order)
                .map(|k| {
                    let v = exp[k];
                    let plus_one = if v % p == p - 1 { v - (p - 1) } else { v + 1 };
                    log[plus_one as usize]
                })
                .collect()
        };
        Arith::Log { log, exp, zech }
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Coefficients of the defining modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The smallest primitive element in packed order.
    pub fn generator(&self) -> u32 {
        self.inner.generator
    }

    pub fn same_as(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }

    pub(crate) fn check_same(&self, other: &FieldSpec) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// The degree-`k` extension F_{q^k} with its canonical modulus.
    pub fn extension(&self, k: u32) -> Result<FieldSpec> {
        if k < 1 {
            return Err(Error::BadDegree(k));
        }
        make_field(self.inner.p as u64, self.inner.e * k)
    }

    pub fn is_valid(&self, a: u32) -> bool {
        a < self.inner.q
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        match &f.arith {
            Arith::Table { add, .. } => add[a as usize * f.q as usize + b as usize],
            Arith::Prime => fp_poly::addmod(a, b, f.p),
            _ if f.p == 2 => a ^ b,
            Arith::Log { log, exp, zech } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let (la, lb) = (log[a as usize], log[b as usize]);
                let d = if lb >= la {
                    lb - la
                } else {
                    lb + (f.q - 1) - la
                };
                match zech[d as usize] {
                    NO_LOG => 0,
                    z => exp[(la + z) as usize],
                }
            }
            Arith::Vector => vec_add(a, b, f.p, f.e),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.inner;
        match &f.arith {
            Arith::Table { neg, .. } => neg[a as usize],
            Arith::Prime => fp_poly::submod(0, a, f.p),
            _ if f.p == 2 => a,
            Arith::Log { log, exp, .. } => {
                if a == 0 {
                    0
                } else {
                    exp[(log[a as usize] + (f.q - 1) / 2) as usize]
                }
            }
            Arith::Vector => vec_neg(a, f.p, f.e),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        match &f.arith {
            Arith::Table { mul, .. } => mul[a as usize * f.q as usize + b as usize],
            Arith::Log { log, exp, .. } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    exp[(log[a as usize] + log[b as usize]) as usize]
                }
            }
            Arith::Prime => fp_poly::mulmod(a, b, f.p),
            Arith::Vector => vec_mul(a, b, f.p, f.e, &f.modulus),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let f = &*self.inner;
        Some(match &f.arith {
            Arith::Table { inv, .. } => inv[a as usize],
            Arith::Log { log, exp, .. } => {
                let l = log[a as usize];
                exp[((f.q - 1 - l) % (f.q - 1)) as usize]
            }
            Arith::Prime => fp_poly::invmod(a, f.p),
            Arith::Vector => vec_pow(a, f.q as u64 - 2, f.p, f.e, &f.modulus),
        })
    }

    pub fn div(&self, a: u32, b: u32) -> Option<u32> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    /// `a^k` by square-and-multiply; negative `k` requires `a != 0`.
    pub fn pow(&self, a: u32, k: i64) -> Option<u32> {
        let base = if k < 0 { self.inv(a)? } else { a };
        let mut exp = k.unsigned_abs();
        if base != 0 {
            exp %= self.inner.q as u64 - 1;
            if exp == 0 && k != 0 {
                return Some(1);
            }
        }
        let mut acc = 1u32;
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        Some(acc)
    }

    /// `a^p`.
    #[inline]
    pub fn frobenius(&self, a: u32) -> u32 {
        let f = &*self.inner;
        if f.e == 1 {
            return a;
        }
        match &f.arith {
            Arith::Table { frob, .. } => frob[a as usize],
            Arith::Log { log, exp, .. } => {
                if a == 0 {
                    0
                } else {
                    let l = (log[a as usize] as u64 * f.p as u64) % (f.q as u64 - 1);
                    exp[l as usize]
                }
            }
            _ => self.pow(a, f.p as i64).unwrap(),
        }
    }

    /// `a^{p^j}`.
    pub fn frobenius_pow(&self, a: u32, j: u32) -> u32 {
        let j = j % self.inner.e;
        (0..j).fold(a, |x, _| self.frobenius(x))
    }

    /// `acc[i] += a * src[i]` for every `i`.
    pub fn axpy(&self, acc: &mut [u32], a: u32, src: &[u32]) {
        debug_assert!(acc.len() >= src.len());
        if a == 0 {
            return;
        }
        let f = &*self.inner;
        match &f.arith {
            Arith::Table { add, mul, .. } => {
                let n = f.q as usize;
                let row = &mul[a as usize * n..(a as usize + 1) * n];
                if f.p == 2 {
                    for (x, &s) in acc.iter_mut().zip(src) {
                        *x ^= row[s as usize];
                    }
                } else {
                    for (x, &s) in acc.iter_mut().zip(src) {
                        *x = add[*x as usize * n + row[s as usize] as usize];
                    }
                }
            }
            Arith::Prime => {
                let p = f.p as u64;
                for (x, &s) in acc.iter_mut().zip(src) {
                    *x = ((*x as u64 + a as u64 * s as u64) % p) as u32;
                }
            }
            Arith::Log { log, exp, .. } => {
                let la = log[a as usize];
                for (x, &s) in acc.iter_mut().zip(src) {
                    if s != 0 {
                        let t = exp[(la + log[s as usize]) as usize];
                        *x = self.add(*x, t);
                    }
                }
            }
            Arith::Vector => {
                for (x, &s) in acc.iter_mut().zip(src) {
                    *x = self.add(*x, self.mul(a, s));
                }
            }
        }
    }

    /// Uniform raw element, optionally excluding zero.
    pub fn random_raw<R: Rng + ?Sized>(&self, rng: &mut R, nonzero: bool) -> u32 {
        let lo = if nonzero { 1 } else { 0 };
        rng.gen_range(lo..self.inner.q)
    }

    pub fn element(&self, raw: u32) -> Result<FieldElement> {
        FieldElement::from_raw(self, raw)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            field: self.clone(),
            value: 1,
        }
    }

    /// Embedding of this field into `target`, which must contain it.
    ///
    /// The image of the generating class `x` is the first root of this
    /// field's modulus among the powers of a generator of the copy of F_q
    /// inside `target`. Results are cached per target degree.
    pub fn embedding_into(&self, target: &FieldSpec) -> Result<Arc<Embedding>> {
        let (p, e, te) = (self.inner.p, self.inner.e, target.inner.e);
        if target.inner.p != p || te % e != 0 {
            return Err(Error::NoEmbedding { p, from: e, to: te });
        }
        if let Some(emb) = self.inner.embeddings.read().unwrap().get(&te) {
            if emb.target().same_as(target) {
                return Ok(emb.clone());
            }
        }
        let emb = Arc::new(Embedding::find(self, target)?);
        let mut cache = self.inner.embeddings.write().unwrap();
        Ok(cache.entry(te).or_insert(emb).clone())
    }

    /// Human-readable rendering of a raw element: decimal in a prime
    /// field, otherwise a polynomial in the generating class `a`.
    pub fn format_raw(&self, v: u32) -> String {
        let (p, e) = (self.inner.p, self.inner.e);
        if e == 1 {
            return v.to_string();
        }
        let digits = fp_poly::unpack(v, p, e);
        let mut parts = Vec::new();
        for (i, &c) in digits.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            };
            parts.push(match (c, mono.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => mono,
                (_, false) => format!("{c}*{mono}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn digits(&self, v: u32) -> Vec<u32> {
        fp_poly::unpack(v, self.inner.p, self.inner.e)
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<u32> {
        let (p, e) = (self.inner.p, self.inner.e);
        if digits.len() != e as usize || digits.iter().any(|&d| d >= p) {
            return Err(Error::InvalidElement(format!(
                "{digits:?} is not a length-{e} vector of residues mod {p}"
            )));
        }
        Ok(fp_poly::pack(digits, p))
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{}; modulus {:?})",
            self.inner.p, self.inner.e, self.inner.modulus
        )
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.e)
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    value: u32,
}

impl FieldElement {
    /// Element with the given coefficient vector (length `e`, residues mod `p`).
    pub fn new(field: &FieldSpec, coeffs: &[u32]) -> Result<Self> {
        Ok(FieldElement {
            field: field.clone(),
            value: field.from_digits(coeffs)?,
        })
    }

    pub fn from_raw(field: &FieldSpec, raw: u32) -> Result<Self> {
        if !field.is_valid(raw) {
            return Err(Error::InvalidElement(format!("{raw} >= {}", field.order())));
        }
        Ok(FieldElement {
            field: field.clone(),
            value: raw,
        })
    }

    /// The class of `x` (the image of the prime field's `0` when `e = 1`).
    pub fn generating_class(field: &FieldSpec) -> Self {
        let value = if field.degree() == 1 {
            0
        } else {
            field.characteristic()
        };
        FieldElement {
            field: field.clone(),
            value,
        }
    }

    pub fn random<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R, nonzero: bool) -> Self {
        FieldElement {
            field: field.clone(),
            value: field.random_raw(rng, nonzero),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn raw(&self) -> u32 {
        self.value
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.field.check_same(&other.field)?;
        self.field
            .div(self.value, other.value)
            .map(|v| self.with(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        self.field
            .pow(self.value, k)
            .map(|v| self.with(v))
            .ok_or(Error::DivisionByZero)
    }

    pub fn frobenius(&self) -> Self {
        self.with(self.field.frobenius(self.value))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format_raw(self.value), self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format_raw(self.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonical_moduli() {
        assert_eq!(make_field(5, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(make_field(6, 1).unwrap_err().to_string(), "not prime: 6");
        assert!(make_field(5, 0)
            .unwrap_err()
            .to_string()
            .starts_with("bad degree"));
        assert!(matches!(
            make_field(2, 40),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(1024), Some((2, 10)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn worked_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.inv(2), Some(3));

        let f4 = make_field(2, 2).unwrap();
        let alpha = FieldElement::generating_class(&f4);
        assert_eq!(alpha.try_mul(&alpha).unwrap().coeffs(), vec![1, 1]);

        let f9 = make_field(3, 2).unwrap();
        let beta = FieldElement::generating_class(&f9);
        assert_eq!(beta.frobenius().coeffs(), vec![0, 2]);
    }

    #[test]
    fn mismatch_and_zero_division() {
        let f5 = make_field(5, 1).unwrap();
        let f7 = make_field(7, 1).unwrap();
        let a = f5.element(2).unwrap();
        let b = f7.element(2).unwrap();
        assert_eq!(a.try_add(&b).unwrap_err().to_string(), "field mismatch");
        assert_eq!(f5.zero().inv().unwrap_err().to_string(), "division by zero");
        assert_eq!(a.try_div(&f5.zero()).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f5.zero().pow(-1).unwrap_err(), Error::DivisionByZero);
        assert_eq!(a.pow(-1).unwrap().raw(), 3);
    }

    fn check_axioms_exhaustive(f: &FieldSpec) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.pow(a, q as i64), Some(a), "a^q = a in {f:?}");
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn axioms_on_every_backend() {
        for (p, e) in [
            (2, 1),
            (2, 8),
            (3, 5),
            (5, 3),
            (257, 1),
            (2, 9),
            (3, 6),
            (31, 2),
        ] {
            check_axioms_exhaustive(&make_field(p, e).unwrap());
        }
    }

    #[test]
    fn backends_agree_with_vector_arithmetic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, e) in [(3u32, 7u32), (2, 12), (5, 6), (7, 2), (65537, 1)] {
            let f = make_field(p as u64, e).unwrap();
            for _ in 0..2000 {
                let a = f.random_raw(&mut rng, false);
                let b = f.random_raw(&mut rng, false);
                assert_eq!(f.mul(a, b), vec_mul(a, b, p, e, f.modulus()));
                assert_eq!(f.add(a, b), vec_add(a, b, p, e));
                assert_eq!(f.neg(a), vec_neg(a, p, e));
                assert_eq!(f.frobenius(a), vec_pow(a, p as u64, p, e, f.modulus()));
            }
        }
    }

    #[test]
    fn vector_backend_large_extension() {
        // 3^16 > 2^22: no tables
        let f = make_field(3, 16).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let a = f.random_raw(&mut rng, true);
            let b = f.random_raw(&mut rng, false);
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            let lhs = f.frobenius(f.add(a, b));
            assert_eq!(lhs, f.add(f.frobenius(a), f.frobenius(b)));
        }
    }

    #[test]
    fn random_elements() {
        let f2 = make_field(2, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(FieldElement::random(&f2, &mut rng, true).raw(), 1);

        let f5 = make_field(5, 1).unwrap();
        let x = FieldElement::random(&f5, &mut ChaCha8Rng::seed_from_u64(42), false);
        let y = FieldElement::random(&f5, &mut ChaCha8Rng::seed_from_u64(42), false);
        assert_eq!(x, y);

        let f4 = make_field(2, 2).unwrap();
        let mut seen = [false; 4];
        for _ in 0..4 * 20 {
            seen[f4.random_raw(&mut rng, false) as usize] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn deterministic_construction() {
        for (p, e) in [(2, 10), (3, 4), (7, 3)] {
            let a = FieldSpec::build(p, e, p.pow(e));
            let b = make_field(p as u64, e).unwrap();
            assert_eq!(a.modulus(), b.modulus());
            assert_eq!(a.generator(), b.generator());
        }
    }
}
