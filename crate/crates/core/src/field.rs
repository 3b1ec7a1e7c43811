//! Arithmetic in GF(p^m).
//!
//! Elements are stored by their canonical integer encoding: the residue
//! polynomial `d_0 + d_1 x + ... + d_{m-1} x^{m-1}` is encoded as
//! `d_0 + d_1 p + ... + d_{m-1} p^{m-1}`. Multiplication goes through
//! exp/log tables built from the smallest primitive element.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

const ADD_TABLE_MAX: u32 = 256;

/// A field element, identified by its integer encoding in `[0, q)`.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A validated finite field GF(p^m) together with its arithmetic tables.
///
/// Immutable after construction; share it behind an `Arc`.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    generator: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
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

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
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

/// Remainder of `a` modulo the monic polynomial `b`, coefficients in GF(p).
fn prime_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let db = b.len() - 1;
    let p = p as u64;
    while r.len() > db {
        let lead = r[r.len() - 1] % p;
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &bi) in b.iter().enumerate() {
                let sub = lead * bi as u64 % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut v = idx;
            for _ in 0..d {
                div.push((v % p as u64) as u32);
                v /= p as u64;
            }
            div.push(1);
            if prime_poly_rem(poly, &div, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(p) for a prime `p`.
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// Builds GF(p^m). Without an explicit modulus the lexicographically
    /// smallest monic irreducible (ascending coefficient tuple) is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch {
                expected: 1,
                got: "0".into(),
            });
        }
        let q = (p as u64).checked_pow(m).unwrap_or(u64::MAX);
        if q > MAX_ORDER {
            return Err(Error::FieldTooLarge(q));
        }
        let modulus = match modulus {
            Some(c) => {
                if c.len() != m as usize + 1 {
                    return Err(Error::DegreeMismatch {
                        expected: m as usize,
                        got: c.len().saturating_sub(1).to_string(),
                    });
                }
                if let Some(&bad) = c.iter().find(|&&x| x >= p) {
                    return Err(Error::FieldMismatch {
                        value: bad as u64,
                        q: p,
                    });
                }
                if c[m as usize] != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: m as usize,
                        got: "non-monic modulus".into(),
                    });
                }
                if !is_irreducible(c, p) {
                    return Err(Error::ReducibleModulus { p });
                }
                c.to_vec()
            }
            None => Self::smallest_irreducible(p, m),
        };
        Ok(Self::from_modulus(p, m, q as u32, modulus))
    }

    fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
        if m == 1 {
            return vec![0, 1];
        }
        let count = (p as u64).pow(m);
        for idx in 0..count {
            // c_0 is the most significant position of the lexicographic order
            let mut tail = Vec::with_capacity(m as usize + 1);
            let mut v = idx;
            for _ in 0..m {
                tail.push((v % p as u64) as u32);
                v /= p as u64;
            }
            tail.reverse();
            tail.push(1);
            if is_irreducible(&tail, p) {
                return tail;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn from_modulus(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> Field {
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            generator: Elem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            neg: Vec::new(),
            add_table: None,
        };
        field.neg = (0..q)
            .map(|a| {
                let d: Vec<u32> = field.digits(Elem(a)).iter().map(|&x| (p - x) % p).collect();
                field.pack_digits(&d).0
            })
            .collect();
        if p != 2 && m > 1 && q <= ADD_TABLE_MAX {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = field.add_digits(Elem(a), Elem(b)).0 as u16;
                }
            }
            field.add_table = Some(t);
        }
        field.generator = field.find_generator();
        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(2 * order.max(1));
        let mut log = vec![0u32; q as usize];
        let mut x = Elem::ONE;
        for i in 0..order.max(1) {
            exp.push(x.0);
            log[x.0 as usize] = i as u32;
            x = field.mul_slow(x, field.generator);
        }
        let first: Vec<u32> = exp.clone();
        exp.extend(first);
        field.exp = exp;
        field.log = log;
        field
    }

    fn find_generator(&self) -> Elem {
        if self.q == 2 {
            return Elem::ONE;
        }
        let order = (self.q - 1) as u64;
        let factors = prime_factors(order);
        (2..self.q)
            .map(Elem)
            .find(|&a| {
                factors
                    .iter()
                    .all(|&l| self.pow_slow(a, order / l) != Elem::ONE)
            })
            .expect("the multiplicative group is cyclic")
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p as u64;
        let mut prod = vec![0u32; da.len() + db.len() - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let r = if self.m == 1 {
            vec![prod[0]]
        } else {
            prime_poly_rem(&prod, &self.modulus, self.p)
        };
        self.pack_digits(&r)
    }

    fn pow_slow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut scale = 1u32;
        for _ in 0..self.m {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale = scale.wrapping_mul(self.p);
        }
        Elem(out)
    }

    fn pack_digits(&self, digits: &[u32]) -> Elem {
        Elem(digits.iter().rev().fold(0u32, |acc, &d| acc * self.p + d))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients in ascending order, monic, length `m + 1`.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Validates an integer encoding.
    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value < self.q as u64 {
            Ok(Elem(value as u32))
        } else {
            Err(Error::FieldMismatch { value, q: self.q })
        }
    }

    pub fn contains(&self, a: Elem) -> bool {
        a.0 < self.q
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    pub fn units(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.q).map(Elem)
    }

    /// Base-p digits of the encoding, ascending, length `m`.
    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.m)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() != self.m as usize {
            return Err(Error::LengthMismatch {
                expected: self.m as usize,
                got: digits.len(),
            });
        }
        if let Some(&bad) = digits.iter().find(|&&d| d >= self.p) {
            return Err(Error::FieldMismatch {
                value: bad as u64,
                q: self.p,
            });
        }
        Ok(self.pack_digits(digits))
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            Elem(a.0 ^ b.0)
        } else if self.m == 1 {
            let s = a.0 + b.0;
            Elem(if s >= self.p { s - self.p } else { s })
        } else if let Some(t) = &self.add_table {
            Elem(t[(a.0 * self.q + b.0) as usize] as u32)
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        Elem(self.exp[i as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` by square-and-multiply; `a^0 = 1` for every `a`.
    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc = Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Sum of a sequence of elements.
    pub fn sum<I: IntoIterator<Item = Elem>>(&self, items: I) -> Elem {
        items
            .into_iter()
            .fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// `n * a` for an integer multiplier.
    pub fn scale_int(&self, n: i64, a: Elem) -> Elem {
        self.mul(self.from_int(n), a)
    }

    /// The smallest-encoding element of multiplicative order `q - 1`.
    pub fn primitive_element(&self) -> Result<Elem> {
        if self.q == 2 {
            return Err(Error::TrivialField);
        }
        Ok(self.generator)
    }

    /// `g^i` for the fixed primitive element `g`.
    pub fn gen_pow(&self, i: u64) -> Elem {
        let order = (self.q - 1).max(1) as u64;
        Elem(self.exp[(i % order) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = (self.q - 1) as u64;
        let mut d = 1;
        loop {
            if group.is_multiple_of(d) && self.pow(a, d) == Elem::ONE {
                return Ok(d);
            }
            d += 1;
        }
    }

    /// The quadratic character: 1 on nonzero squares, -1 on non-squares, 0 at 0.
    pub fn quadratic_character(&self, a: Elem) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if a.is_zero() {
            return Ok(0);
        }
        Ok(if self.pow(a, ((self.q - 1) / 2) as u64) == Elem::ONE {
            1
        } else {
            -1
        })
    }

    /// True when `a` is a square in the field (zero included).
    pub fn is_square(&self, a: Elem) -> bool {
        if self.p == 2 || a.is_zero() {
            return true;
        }
        self.pow(a, ((self.q - 1) / 2) as u64) == Elem::ONE
    }

    /// The unique square root in characteristic two, `a^(q/2)`.
    pub fn sqrt_char2(&self, a: Elem) -> Result<Elem> {
        if self.p != 2 {
            return Err(Error::CharacteristicNotTwo);
        }
        Ok(self.pow(a, (self.q / 2) as u64))
    }
}
