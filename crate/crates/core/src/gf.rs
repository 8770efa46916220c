//! Arithmetic in finite fields `F_q`, `q = p^e <= 2^16`.
//!
//! Elements are indices in `[0, q)`. An index is read as the little-endian
//! base-`p` digit vector of the element's coordinates in the polynomial basis
//! `1, x, ..., x^(e-1)` of `F_p[x] / (modulus)`. Multiplication goes through
//! exp/log tables relative to a fixed generator of the multiplicative group.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

/// Fields up to this size carry a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

/// A field element, stored as its index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Caller guarantees `index < q`.
    #[inline]
    pub(crate) fn raw(index: u32) -> Elem {
        Elem(index as u16)
    }
}

/// JSON field description: `{"p": .., "e": .., "modulus": [digits]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDesc {
    pub p: u32,
    pub e: u32,
    pub modulus: Vec<u32>,
}

/// An immutable finite field with precomputed tables.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u16>,
    log: Vec<u32>,
    neg: Vec<u16>,
    add: Vec<u16>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits `q` as `p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let (mut rest, mut e) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p as u32, e))
}

// Dense polynomials over F_p, little-endian coefficient vectors.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r[r.len() - 1] as u64 * lead_inv % p as u64;
        for (i, &bc) in b.iter().enumerate() {
            let sub = factor * bc as u64 % p as u64;
            r[shift + i] = ((r[shift + i] as u64 + p as u64 - sub) % p as u64) as u32;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem(&prod, modulus, p)
}

fn digits_of(mut index: u32, p: u32, len: u32) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = index % p;
            index /= p;
            d
        })
        .collect()
}

fn index_of(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Monic irreducibility test by trial division against every monic
/// polynomial of degree `1..=deg/2`.
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let poly = trim(poly.to_vec());
    if poly.len() < 2 {
        return false;
    }
    let deg = (poly.len() - 1) as u32;
    for k in 1..=deg / 2 {
        for low in 0..p.pow(k) {
            let mut divisor = digits_of(low, p, k);
            divisor.push(1);
            if poly_rem(&poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `e`, ordering candidates by the
/// integer whose base-`p` digits are their lower coefficients.
fn canonical_modulus(p: u32, e: u32) -> Vec<u32> {
    (0..p.pow(e))
        .map(|low| {
            let mut m = digits_of(low, p, e);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible polynomial exists in every degree")
}

impl Field {
    /// Builds `F_{p^e}`; with no modulus the canonical irreducible is used.
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::Domain("extension degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        let q = q as u32;
        let modulus = match modulus {
            Some(m) => {
                let ok = m.len() == e as usize + 1
                    && m[e as usize] == 1
                    && m.iter().all(|&c| c < p)
                    && is_irreducible(&m, p);
                if !ok {
                    return Err(Error::BadModulus(m));
                }
                m
            }
            None => canonical_modulus(p, e),
        };

        let mul_slow = |a: u32, b: u32| -> u32 {
            let prod = poly_mulmod(&digits_of(a, p, e), &digits_of(b, p, e), &modulus, p);
            index_of(&prod, p)
        };

        // first element of full multiplicative order
        let order = q - 1;
        let mut exp = Vec::new();
        let mut generator = 1;
        for g in 1..q {
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            loop {
                powers.push(x as u16);
                x = mul_slow(x, g);
                if x == 1 {
                    break;
                }
            }
            if powers.len() == order as usize {
                generator = g;
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (k, &x) in exp.iter().enumerate() {
            log[x as usize] = k as u32;
        }
        let doubled: Vec<u16> = exp.iter().chain(exp.iter()).copied().collect();

        let add_slow = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits_of(a, p, e), digits_of(b, p, e));
            let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            index_of(&sum, p)
        };
        let neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits_of(a, p, e).iter().map(|&x| (p - x) % p).collect();
                index_of(&d, p) as u16
            })
            .collect();
        let add = if q <= ADD_TABLE_LIMIT && p != 2 {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(add_slow(a, b) as u16);
                }
            }
            t
        } else {
            Vec::new()
        };

        Ok(Field {
            p,
            e,
            q,
            modulus,
            generator: Elem(generator as u16),
            exp: doubled,
            log,
            neg,
            add,
        })
    }

    /// Canonical field of size `q` (which must be a prime power).
    pub fn of_size(q: u64) -> Result<Field> {
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        Field::new(p, e, None)
    }

    pub fn from_desc(desc: &FieldDesc) -> Result<Field> {
        Field::new(desc.p, desc.e, Some(desc.modulus.clone()))
    }

    pub fn desc(&self) -> FieldDesc {
        FieldDesc {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elem(&self, index: u64) -> Result<Elem> {
        if index < self.q as u64 {
            Ok(Elem(index as u16))
        } else {
            Err(Error::ElementOutOfRange { index, q: self.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u16)
    }

    /// All `q` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(|i| Elem(i as u16))
    }

    /// Coordinates of `a` in the polynomial basis.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        digits_of(a.0 as u32, self.p, self.e)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if !self.add.is_empty() {
            Elem(self.add[a.index() * self.q as usize + b.index()])
        } else {
            let (p, mut x, mut y) = (self.p, a.0 as u32, b.0 as u32);
            let (mut out, mut place) = (0u32, 1u32);
            for _ in 0..self.e {
                out += ((x % p + y % p) % p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            Elem(out as u16)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.index()])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.index()] + self.log[b.index()]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        Ok(Elem(self.exp[((order - self.log[a.index()]) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^n` with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let k = (self.log[a.index()] as u64 * (n % order)) % order;
        Elem(self.exp[k as usize])
    }
}
