//! Table-driven arithmetic in GF(q) for prime powers q <= 256.
//!
//! An element of GF(p^e) is stored as the index `c_0 + c_1 p + ... + c_{e-1} p^{e-1}`
//! of its residue polynomial `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` modulo a fixed
//! monic irreducible polynomial. The irreducible polynomial is the least one under
//! the same base-p encoding of its non-leading coefficients, so the tables depend
//! on q alone.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_ORDER: u64 = 256;

/// Shared handle to a field; matrices and label systems hold one of these.
pub type Field = Arc<FieldSpec>;

#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Caller guarantees `value < q` for the field this element is used with.
    pub(crate) const fn from_raw(value: u8) -> Self {
        FieldElement(value)
    }

    pub fn value(self) -> usize {
        self.0 as usize
    }

    pub(crate) fn raw(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    q: usize,
    p: usize,
    e: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// Monic modulus, coefficients from the constant term up; length e + 1.
    modulus: Vec<u8>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

/// Splits `q` into `(p, e)` with `q = p^e`, or `None` if q is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn make_field(q: u64) -> Result<FieldSpec> {
    FieldSpec::new(q)
}

/// Same as [`make_field`] but already wrapped for sharing.
pub fn field(q: u64) -> Result<Field> {
    FieldSpec::new(q).map(Arc::new)
}

impl FieldSpec {
    pub fn new(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::Unsupported(q));
        }
        let (q, p) = (q as usize, p as usize);
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            least_irreducible(p, e as usize)
        };

        let add = table(q, |a, b| {
            let (ca, cb) = (digits(a, p, e), digits(b, p, e));
            let sum: Vec<u8> = ca
                .iter()
                .zip(&cb)
                .map(|(&x, &y)| ((x as usize + y as usize) % p) as u8)
                .collect();
            undigits(&sum, p)
        });
        let mul = if e == 1 {
            table(q, |a, b| (a * b) % q)
        } else {
            table(q, |a, b| {
                let prod = poly_mul(&digits(a, p, e), &digits(b, p, e), p);
                undigits(&poly_rem(prod, &modulus, p), p)
            })
        };
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
        }

        Ok(FieldSpec {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
            modulus,
        })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// Coefficients of the defining polynomial, constant term first.
    pub fn irreducible_poly(&self) -> &[u8] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value < self.q as u64 {
            Ok(FieldElement(value as u8))
        } else {
            Err(Error::ElementOutOfRange { value, q: self.q })
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.value() < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|v| FieldElement(v as u8))
    }

    /// The nonzero elements in ascending index order.
    pub fn nonzero_elements(&self) -> Vec<FieldElement> {
        (1..self.q).map(|v| FieldElement(v as u8)).collect()
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.value() * self.q + b.value()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.value() * self.q + b.value()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.value()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            Err(Error::DivisionByZero(self.q))
        } else {
            Ok(FieldElement(self.inv[a.value()]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// `a + a + ... + a` (n terms), i.e. the integer multiple n·a.
    pub fn times(&self, a: FieldElement, n: u64) -> FieldElement {
        // n·1 is the prime-field element n mod p, which has index n mod p.
        self.mul(FieldElement((n % self.p as u64) as u8), a)
    }

    // Raw u8 views for the hot loops in linalg and search.
    #[inline]
    pub(crate) fn add_u8(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub(crate) fn mul_u8(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub(crate) fn neg_u8(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub(crate) fn inv_u8(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}

fn table(q: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u8> {
    let mut t = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            t.push(f(a, b) as u8);
        }
    }
    t
}

fn digits(mut a: usize, p: usize, e: u32) -> Vec<u8> {
    (0..e)
        .map(|_| {
            let d = (a % p) as u8;
            a /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u8], p: usize) -> usize {
    c.iter().rev().fold(0, |acc, &d| acc * p + d as usize)
}

fn poly_mul(a: &[u8], b: &[u8], p: usize) -> Vec<u8> {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as usize + x as usize * y as usize) % p) as u8;
        }
    }
    out
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(mut a: Vec<u8>, m: &[u8], p: usize) -> Vec<u8> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap() as usize;
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                a[idx] = ((a[idx] as usize + p * p - lead * c as usize % p) % p) as u8;
            }
        }
        a.pop();
    }
    a.resize(dm, 0);
    a
}

fn monic(code: usize, p: usize, degree: usize) -> Vec<u8> {
    let mut c = digits(code, p, degree as u32);
    c.push(1);
    c
}

fn is_irreducible(f: &[u8], p: usize) -> bool {
    let deg = f.len() - 1;
    if f[0] == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let g = monic(code, p, d);
            if poly_rem(f.to_vec(), &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: usize, e: usize) -> Vec<u8> {
    (0..p.pow(e as u32))
        .map(|code| monic(code, p, e))
        .find(|f| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}
