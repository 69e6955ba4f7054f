//! Exact arithmetic in small finite fields GF(p^e).
//!
//! Elements are stored as their enumeration index: the coefficient vector
//! `(c_0, ..., c_{e-1})` over the basis `1, X, ..., X^{e-1}` read as a
//! radix-`p` integer with `c_0` least significant. For GF(4) this gives the
//! order `0, 1, ω, ω + 1`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_P: u64 = 1 << 16;
const MAX_EXT_Q: u64 = 1 << 16;
const MUL_TABLE_MAX_Q: u32 = 256;

/// A field element, identified by its enumeration index in `[0, q)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub(crate) u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug)]
struct Inner {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    mul_table: Option<Vec<u32>>,
    inv_table: Option<Vec<u32>>,
}

/// A validated finite field. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.e == other.0.e && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.q.hash(h);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.e == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.e, self.0.modulus)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

/// Arithmetic operation selector for [`FieldSpec::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
    Pow(u64),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Monic irreducible moduli `[c_0, ..., c_e]` used when none is supplied.
fn builtin_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    Some(match (p, e) {
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (3, 2) => vec![1, 0, 1],
        (3, 3) => vec![1, 2, 0, 1],
        (5, 2) => vec![2, 0, 1],
        _ => return None,
    })
}

// Dense polynomial helpers over GF(p), coefficient vectors low degree first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm] as u64, p as u64 - 2, p as u64);
    while r.len() > dm {
        let top = *r.last().unwrap() as u64;
        if top != 0 {
            let f = top * lead_inv % p as u64;
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                let v = &mut r[shift + i];
                *v = ((*v as u64 + (p as u64 - f * c as u64 % p as u64)) % p as u64) as u32;
            }
        }
        r.pop();
    }
    poly_trim(r)
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    // A reducible polynomial of degree e has a monic factor of degree <= e/2.
    for d in 1..=e / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds GF(p^e). `modulus` is `[c_0, ..., c_e]`, monic; when absent for
    /// `e > 1` a built-in table covers q ∈ {4, 8, 9, 16, 25, 27}.
    pub fn new(p: u64, e: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::CompositeP(p));
        }
        if p > MAX_P {
            return Err(Error::PrimeTooLarge(p));
        }
        let p32 = p as u32;
        if e == 0 {
            return Err(Error::BadModulus("extension degree must be at least 1".into()));
        }
        if e == 1 {
            return Ok(Self::build(p32, 1, vec![0, 1]));
        }
        if e > 4 {
            return Err(Error::UnsupportedExtension { p: p32, e });
        }
        let q = p.checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_EXT_Q {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        e + 1,
                        m.len()
                    )));
                }
                if m.iter().any(|&c| c >= p32) {
                    return Err(Error::BadModulus("coefficient not reduced mod p".into()));
                }
                if m[e as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                m.to_vec()
            }
            None => builtin_modulus(p32, e).ok_or(Error::UnsupportedExtension { p: p32, e })?,
        };
        if !is_irreducible(&modulus, p32) {
            return Err(Error::ReducibleModulus(modulus, p32));
        }
        Ok(Self::build(p32, e, modulus))
    }

    /// Shorthand for a prime field or a built-in extension of order `q`.
    pub fn of_order(q: u64) -> Result<FieldSpec> {
        if q < 2 {
            return Err(Error::CompositeP(q));
        }
        let mut p = 2;
        while !q.is_multiple_of(p) {
            p += 1;
        }
        let mut e = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            e += 1;
        }
        if r != 1 {
            return Err(Error::CompositeP(q));
        }
        Self::new(p, e, None)
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> FieldSpec {
        let q = p.pow(e);
        let mut inner = Inner { p, e, q, modulus, mul_table: None, inv_table: None };
        if e > 1 && q <= MUL_TABLE_MAX_Q {
            let tmp = FieldSpec(Arc::new(Inner {
                p,
                e,
                q,
                modulus: inner.modulus.clone(),
                mul_table: None,
                inv_table: None,
            }));
            let mut table = vec![0u32; (q * q) as usize];
            for a in 0..q {
                for b in a..q {
                    let c = tmp.mul_slow(Fe(a), Fe(b)).0;
                    table[(a * q + b) as usize] = c;
                    table[(b * q + a) as usize] = c;
                }
            }
            let mut inv = vec![0u32; q as usize];
            for a in 1..q {
                for b in 1..q {
                    if table[(a * q + b) as usize] == 1 {
                        inv[a as usize] = b;
                        break;
                    }
                }
            }
            inner.mul_table = Some(table);
            inner.inv_table = Some(inv);
        }
        FieldSpec(Arc::new(inner))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// `[c_0, ..., c_e]`; `[0, 1]` for a prime field.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> Fe {
        Fe::ZERO
    }

    pub fn one(&self) -> Fe {
        Fe::ONE
    }

    pub fn element(&self, index: u64) -> Result<Fe> {
        if index >= self.0.q as u64 {
            return Err(Error::ElementOutOfRange { index, q: self.0.q });
        }
        Ok(Fe(index as u32))
    }

    /// Image of an integer under Z → GF(p) ⊂ GF(q).
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All `q` elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.0.q).map(Fe)
    }

    /// Coefficients `(c_0, ..., c_{e-1})` of an element.
    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        let mut x = a.0;
        (0..self.0.e)
            .map(|_| {
                let c = x % self.0.p;
                x /= self.0.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Fe {
        let mut x = 0u32;
        for &c in coeffs.iter().rev() {
            x = x * self.0.p + c % self.0.p;
        }
        Fe(x)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p;
        if self.0.e == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return Fe((s % p as u64) as u32);
        }
        if p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut r, mut place) = (a.0, b.0, 0u32, 1u32);
        for _ in 0..self.0.e {
            r += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        Fe(r)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let p = self.0.p;
        if self.0.e == 1 {
            return Fe((p - a.0) % p);
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut r, mut place) = (a.0, 0u32, 1u32);
        for _ in 0..self.0.e {
            r += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        Fe(r)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if self.0.e == 1 {
            return Fe((a.0 as u64 * b.0 as u64 % self.0.p as u64) as u32);
        }
        if let Some(t) = &self.0.mul_table {
            return Fe(t[(a.0 * self.0.q + b.0) as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let p = self.0.p as u64;
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; ca.len() + cb.len() - 1];
        for (i, &x) in ca.iter().enumerate() {
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let r = poly_rem(&prod, &self.0.modulus, self.0.p);
        self.from_coeffs(&r)
    }

    pub fn pow(&self, a: Fe, mut exp: u64) -> Fe {
        let mut base = a;
        let mut acc = Fe::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via `a^(q-2)`.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.0.inv_table {
            return Ok(Fe(t[a.0 as usize]));
        }
        Ok(self.pow(a, self.0.q as u64 - 2))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Single entry point over [`ArithOp`]; `b` is ignored by unary ops.
    pub fn arith(&self, op: ArithOp, a: Fe, b: Fe) -> Result<Fe> {
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Neg => self.neg(a),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Pow(k) => self.pow(a, k),
        })
    }

    /// Human-readable element, e.g. `2*X + 1`; prime-field elements print as integers.
    pub fn display_elem(&self, a: Fe) -> String {
        if self.0.e == 1 {
            return a.0.to_string();
        }
        let parts: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "X".into(),
                (1, c) => format!("{c}*X"),
                (i, 1) => format!("X^{i}"),
                (i, c) => format!("{c}*X^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FieldSpecJson {
    p: u64,
    e: u32,
    modulus: Vec<u32>,
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpecJson { p: self.0.p as u64, e: self.0.e, modulus: self.0.modulus.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = FieldSpecJson::deserialize(d)?;
        let m = (j.e > 1).then_some(j.modulus.as_slice());
        FieldSpec::new(j.p, j.e, m).map_err(serde::de::Error::custom)
    }
}
