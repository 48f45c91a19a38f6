use serde::Serialize;

use crate::arith::prime_power;
use crate::error::{Error, Result};

/// Fixed degree-f moduli for the non-prime fields, little-endian over F_p.
/// These are the Conway polynomials, so the class of `x` is primitive.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

pub(crate) fn table_modulus(p: u32, f: u32) -> Option<&'static [u32]> {
    MODULI.iter().find(|(pp, ff, _)| *pp == p && *ff == f).map(|(_, _, m)| *m)
}

/// The field with `q = p^f` elements. An element is the integer whose base-p
/// digits are its coordinates in the basis `1, t, t², ...`, where `t` is a
/// root of the fixed modulus; for `f = 1` this is just the residue mod p.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub q: u32,
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

impl Field {
    pub fn new(q: u64) -> Result<Self> {
        let (p, f) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > 1 << 16 {
            return Err(Error::UnsupportedField(q));
        }
        let (p, q) = (p as u32, q as u32);
        let modulus =
            if f == 1 { vec![0, 1] } else { table_modulus(p, f).ok_or(Error::UnsupportedField(q as u64))?.to_vec() };
        let mut field = Field { p, f, q, modulus, exp: Vec::new(), log: Vec::new(), add: Vec::new() };
        if q <= 256 {
            field.add = (0..q * q).map(|i| field.add_digits(i / q, i % q)).collect();
        }
        let g = (1..q).find(|&g| field.order_slow(g) == q - 1).expect("F_q^× is cyclic");
        let mut exp = Vec::with_capacity(q as usize - 1);
        let mut log = vec![0; q as usize];
        let mut x = 1;
        for k in 0..q - 1 {
            exp.push(x);
            log[x as usize] = k;
            x = field.mul_slow(x, g);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn info(&self) -> FieldInfo {
        FieldInfo { q: self.q, p: self.p, f: self.f, modulus: self.modulus.clone() }
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        (0..self.f)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add_digits(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.undigits(&s)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        if self.f == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let f = self.f as usize;
        let mut prod = vec![0u32; 2 * f - 1];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for i in 0..=f {
                let sub = c * self.modulus[i] % self.p;
                prod[k - f + i] = (prod[k - f + i] + self.p - sub) % self.p;
            }
        }
        self.undigits(&prod[..f])
    }

    fn order_slow(&self, g: u32) -> u32 {
        let mut x = g;
        let mut k = 1;
        while x != 1 {
            x = self.mul_slow(x, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.add.is_empty() {
            self.add_digits(a, b)
        } else {
            self.add[(a * self.q + b) as usize]
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        let d: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.undigits(&d)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        if a == 0 {
            return u32::from(k == 0);
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (k % n)) % n) as usize]
    }

    /// `a^(p^k)`.
    pub fn frobenius(&self, a: u32, k: u32) -> u32 {
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        let e = crate::arith::pow_mod(self.p as u64, k as u64, n);
        self.exp[(self.log[a as usize] as u64 * e % n) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u32 {
        let n = self.q - 1;
        n / crate::arith::gcd(self.log[a as usize] as u64, n as u64) as u32
    }

    pub fn minus_one(&self) -> u32 {
        self.neg(1)
    }
}
