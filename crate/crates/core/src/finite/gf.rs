//! Finite fields with at most 16 elements, by lookup tables.
//!
//! An element of `GF(p^k)` is the integer whose base-`p` digits are the
//! coefficients of its residue modulo the defining polynomial, lowest first.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;

/// Monic defining polynomials, coefficients lowest first without the leading one.
const MODULI: &[(u32, u32, &[u8])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (3, 2, &[1, 0]),
];

pub const MAX_ORDER: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GfOrder {
    pub p: u32,
    pub k: u32,
}

#[derive(Clone, Debug)]
pub struct Gf {
    p: u32,
    k: u32,
    q: u32,
    /// Full monic modulus, lowest coefficient first.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut x = x;
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic `m` over `GF(p)`, coefficient vectors.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
        r.pop();
    }
    r
}

impl Gf {
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) || k == 0 || p.checked_pow(k).is_none_or(|q| q > MAX_ORDER) {
            return Err(Error::UnsupportedField { p, k });
        }
        let q = p.pow(k);
        let modulus: Vec<u8> = if k == 1 {
            vec![0, 1]
        } else {
            let (_, _, low) = MODULI
                .iter()
                .find(|(mp, mk, _)| *mp == p && *mk == k)
                .ok_or(Error::UnsupportedField { p, k })?;
            low.iter().copied().chain(std::iter::once(1)).collect()
        };
        let m: Vec<u32> = modulus.iter().map(|&c| c as u32).collect();
        if !irreducible(&m, p) {
            return Err(Error::UnsupportedField { p, k });
        }
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s, p) as u8;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &m, p);
                r.resize(k as usize, 0);
                mul[(a * q + b) as usize] = undigits(&r, p) as u8;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).expect("additive inverse") as u8)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).expect("field") as u8
                }
            })
            .collect();
        Ok(Gf {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn ty(&self) -> GfOrder {
        GfOrder { p: self.p, k: self.k }
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    #[inline]
    pub fn plus(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn times(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn minus(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; zero maps to zero.
    #[inline]
    pub fn recip(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn power(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.times(acc, base);
            }
            base = self.times(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a ↦ a^{p^f}`.
    pub fn frobenius(&self, a: u8, f: u32) -> u8 {
        let mut x = a;
        for _ in 0..f % self.k {
            x = self.power(x, self.p as u64);
        }
        x
    }

    /// The least element generating the multiplicative group.
    pub fn primitive(&self) -> u8 {
        (1..self.q as u8)
            .find(|&a| {
                let mut x = a;
                let mut ord = 1;
                while x != 1 {
                    x = self.times(x, a);
                    ord += 1;
                }
                ord == self.q - 1
            })
            .expect("cyclic unit group")
    }
}

/// No monic factor of degree `1..=deg/2`, by exhaustive trial division.
fn irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    for fd in 1..=d / 2 {
        for low in 0..p.pow(fd as u32) {
            let mut f = digits(low, p, fd as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl Field for Gf {
    type Elem = u8;

    fn zero(&self) -> u8 {
        0
    }

    fn one(&self) -> u8 {
        1
    }

    fn from_i64(&self, n: i64) -> u8 {
        // the prime subfield sits at the integers 0..p
        n.rem_euclid(self.p as i64) as u8
    }

    fn is_zero(&self, a: &u8) -> bool {
        *a == 0
    }

    fn add(&self, a: &u8, b: &u8) -> Result<u8> {
        Ok(self.plus(*a, *b))
    }

    fn sub(&self, a: &u8, b: &u8) -> Result<u8> {
        Ok(self.plus(*a, self.minus(*b)))
    }

    fn mul(&self, a: &u8, b: &u8) -> Result<u8> {
        Ok(self.times(*a, *b))
    }

    fn neg(&self, a: &u8) -> u8 {
        self.minus(*a)
    }

    fn inv(&self, a: &u8) -> Result<u8> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.recip(*a))
    }
}
