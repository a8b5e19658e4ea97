//! Exact arithmetic in GF(p^m).
//!
//! Elements are handled as their canonical integer encoding
//! `enc(a) = sum coeffs[i] * p^i` (constant coefficient first). The
//! [`Field`] handle does the arithmetic on encodings; [`FieldElem`] pairs
//! an encoding with its field for the public, checked API.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use crate::limits::checked_pow;
use crate::{Error, Result};

/// p^m <= 2^20 forces m <= 20.
pub const MAX_DEGREE: usize = 20;
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

// Fields up to this order get full operation tables.
const TABLE_THRESHOLD: u32 = 256;

pub struct FieldDescriptor {
    p: u32,
    m: usize,
    modulus: Vec<u32>,
    q: u32,
    tables: Option<Tables>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

/// Shared handle to an immutable field descriptor.
#[derive(Clone)]
pub struct Field(Arc<FieldDescriptor>);

fn field_cache() -> &'static Mutex<HashMap<(u32, usize), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
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

impl Field {
    /// GF(p^m) with the default order bound of 2^20.
    pub fn new(p: u64, m: usize) -> Result<Field> {
        Field::with_max_order(p, m, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(p: u64, m: usize, max_order: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m < 1 {
            return Err(Error::InvalidParameter(
                "extension degree must be at least 1".into(),
            ));
        }
        let bound = max_order.min(DEFAULT_MAX_ORDER);
        let q = match checked_pow(p, m) {
            Some(q) if q <= bound => q,
            other => {
                return Err(Error::TooLarge {
                    what: "field order",
                    size: other.map_or_else(|| format!("{p}^{m}"), |q| q.to_string()),
                    bound,
                })
            }
        };
        let key = (p as u32, m);
        if let Some(f) = field_cache().lock().unwrap().get(&key) {
            return Ok(f.clone());
        }
        let field = Field(Arc::new(FieldDescriptor::build(p as u32, m, q as u32)));
        field_cache()
            .lock()
            .unwrap()
            .entry(key)
            .or_insert(field.clone());
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> usize {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, constant coefficient first, length m + 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0
    }

    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.p() == other.p() && self.m() == other.m())
    }

    pub(crate) fn ensure_same(&self, other: &Field) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.q() as u64,
                right: other.q() as u64,
            })
        }
    }

    pub fn elem(&self, enc: u32) -> Result<FieldElem> {
        if enc >= self.q() {
            return Err(Error::ElementOutOfRange {
                enc: enc as u64,
                q: self.q() as u64,
            });
        }
        Ok(FieldElem {
            field: self.clone(),
            enc,
        })
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            enc: 0,
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            field: self.clone(),
            enc: 1,
        }
    }

    /// Base-p digits of an encoding, constant coefficient first.
    pub fn digits(&self, mut a: u32) -> [u32; MAX_DEGREE] {
        let mut out = [0u32; MAX_DEGREE];
        let p = self.p();
        for slot in out.iter_mut().take(self.m()) {
            *slot = a % p;
            a /= p;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.p();
        digits
            .iter()
            .take(self.m())
            .rev()
            .fold(0u32, |acc, &d| acc * p + d % p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if let Some(t) = &d.tables {
            return t.add[(a * d.q + b) as usize];
        }
        d.add_raw(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let d = &*self.0;
        if let Some(t) = &d.tables {
            return t.neg[a as usize];
        }
        d.neg_raw(a)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let d = &*self.0;
        if let Some(t) = &d.tables {
            return t.mul[(a * d.q + b) as usize];
        }
        d.mul_raw(a, b)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let d = &*self.0;
        if let Some(t) = &d.tables {
            return Some(t.inv[a as usize]);
        }
        Some(d.pow_raw(a, d.q as u64 - 2))
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32> {
        let binv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, binv))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// a^(p^i).
    pub fn frobenius(&self, a: u32, i: usize) -> u32 {
        let mut x = a;
        for _ in 0..(i % self.m()) {
            x = self.pow(x, self.p() as u64);
        }
        x
    }

    /// All q elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.q()).map(move |enc| FieldElem {
            field: self.clone(),
            enc,
        })
    }
}

impl FieldDescriptor {
    fn build(p: u32, m: usize, q: u32) -> FieldDescriptor {
        let modulus = smallest_irreducible(p, m);
        let mut desc = FieldDescriptor {
            p,
            m,
            modulus,
            q,
            tables: None,
        };
        if q <= TABLE_THRESHOLD {
            desc.tables = Some(desc.build_tables());
        }
        desc
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u32; q * q];
        let mut mul = vec![0u32; q * q];
        for a in 0..q {
            for b in 0..q {
                add[a * q + b] = self.add_raw(a as u32, b as u32);
                mul[a * q + b] = self.mul_raw(a as u32, b as u32);
            }
        }
        let neg = (0..q as u32).map(|a| self.neg_raw(a)).collect();
        let mut inv = vec![0u32; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u32;
        }
        Tables { add, mul, neg, inv }
    }

    fn add_raw(&self, mut a: u32, mut b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut out, mut pw) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((a % p + b % p) % p) * pw;
            pw = pw.wrapping_mul(p);
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_raw(&self, mut a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut out, mut pw) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((p - a % p) % p) * pw;
            pw = pw.wrapping_mul(p);
            a /= p;
        }
        out
    }

    fn mul_raw(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m;
        let mut da = [0u64; MAX_DEGREE];
        let mut db = [0u64; MAX_DEGREE];
        let (mut x, mut y) = (a as u64, b as u64);
        for i in 0..m {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += da[i] * db[j];
            }
        }
        for c in prod.iter_mut().take(2 * m - 1) {
            *c %= p;
        }
        // x^m = -(modulus[0] + ... + modulus[m-1] x^(m-1))
        for t in (m..2 * m - 1).rev() {
            let c = prod[t];
            if c == 0 {
                continue;
            }
            prod[t] = 0;
            for j in 0..m {
                let sub = (c * self.modulus[j] as u64) % p;
                prod[t - m + j] = (prod[t - m + j] + p - sub) % p;
            }
        }
        let mut out = 0u64;
        for i in (0..m).rev() {
            out = out * p + prod[i];
        }
        out as u32
    }

    fn pow_raw(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldDescriptor")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m() == 1 {
            write!(f, "GF({})", self.p())
        } else {
            write!(f, "GF({}^{})", self.p(), self.m())
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p().hash(state);
        self.m().hash(state);
    }
}

/// Remainder of `f` modulo the monic polynomial `g` over F_p.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    let p = p as u64;
    while r.len() > dg {
        let top = r.len() - 1;
        let c = r[top] % p;
        if c != 0 {
            for (j, &gj) in g.iter().enumerate() {
                let idx = top - dg + j;
                r[idx] = (r[idx] + p * p - c * gj as u64) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|c| (c % p) as u32).collect()
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let m = f.len() - 1;
    for deg in 1..=m / 2 {
        let count = (p as u64).pow(deg as u32);
        for t in 0..count {
            let mut g = Vec::with_capacity(deg + 1);
            let mut x = t;
            for _ in 0..deg {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m over F_p,
/// comparing coefficient tuples constant term first.
pub(crate) fn smallest_irreducible(p: u32, m: usize) -> Vec<u32> {
    let count = (p as u64).pow(m as u32);
    for t in 0..count {
        // c_0 is the most significant digit of t
        let mut f = vec![0u32; m + 1];
        let mut x = t;
        for i in (0..m).rev() {
            f[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        f[m] = 1;
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of a finite field, tagged with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    field: Field,
    enc: u32,
}

impl FieldElem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn enc(&self) -> u32 {
        self.enc
    }

    /// Polynomial coefficients, constant term first, length m.
    pub fn coeffs(&self) -> Vec<u32> {
        self.field.digits(self.enc)[..self.field.m()].to_vec()
    }

    pub fn from_coeffs(field: &Field, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() != field.m() {
            return Err(Error::DimensionMismatch {
                expected: field.m(),
                found: coeffs.len(),
            });
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= field.p()) {
            return Err(Error::Malformed(format!(
                "coefficient {c} not reduced mod {}",
                field.p()
            )));
        }
        field.elem(field.from_digits(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.enc == 0
    }

    pub fn inv(&self) -> Result<FieldElem> {
        let enc = self.field.inv(self.enc).ok_or(Error::DivisionByZero)?;
        Ok(self.with_enc(enc))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.with_enc(self.field.pow(self.enc, e))
    }

    pub fn frobenius(&self, i: usize) -> FieldElem {
        self.with_enc(self.field.frobenius(self.enc, i))
    }

    fn with_enc(&self, enc: u32) -> FieldElem {
        FieldElem {
            field: self.field.clone(),
            enc,
        }
    }
}

/// Checked binary arithmetic: rejects mixed fields and division by zero.
pub fn arith(op: ArithOp, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
    a.field.ensure_same(&b.field)?;
    let f = &a.field;
    let enc = match op {
        ArithOp::Add => f.add(a.enc, b.enc),
        ArithOp::Sub => f.sub(a.enc, b.enc),
        ArithOp::Mul => f.mul(a.enc, b.enc),
        ArithOp::Div => f.div(a.enc, b.enc)?,
    };
    Ok(a.with_enc(enc))
}

pub fn enumerate_field(field: &Field) -> Vec<FieldElem> {
    field.elements().collect()
}

// Operator forms panic on mixed fields; use `arith` for the checked path.
macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                arith($op, self, rhs).expect("operands from different fields")
            }
        }
        impl $tr for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.with_enc(self.field.neg(self.enc))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.enc, self.field)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.enc)
    }
}
