use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};

/// Largest number of monic polynomials of one degree the sieve will mark.
const SIEVE_LIMIT: u64 = 1 << 26;

/// A monic polynomial over F_q, coefficients little-endian.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqPoly(Vec<u32>);

impl FqPoly {
    pub fn new(coeffs: Vec<u32>, field: &Field) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.last() != Some(&1) {
            return Err(Error::NotMonic);
        }
        if coeffs.iter().any(|&c| c >= field.q()) {
            return Err(Error::NotMonic);
        }
        Ok(Self(coeffs))
    }

    /// `X - a`.
    pub fn linear(a: u32, field: &Field) -> Self {
        Self(vec![field.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        (self.0.len() - 1) as u32
    }

    pub fn constant(&self) -> u32 {
        self.0[0]
    }

    /// The monic polynomial whose roots are the inverses of the roots of
    /// `self`.
    pub fn dual(&self, field: &Field) -> Result<Self> {
        let c0 = self.constant();
        if c0 == 0 {
            return Err(Error::ZeroConstantTerm);
        }
        let inv = field.inv(c0);
        Ok(Self(self.0.iter().rev().map(|&c| field.mul(c, inv)).collect()))
    }

    /// Raises every coefficient to the power `p^k`.
    pub fn frobenius(&self, k: u32, field: &Field) -> Self {
        Self(self.0.iter().map(|&c| field.frobenius(c, k)).collect())
    }

    /// Whether every root has multiplicative order prime to `ell`. Only
    /// meaningful for irreducible `self` with nonzero constant term.
    pub fn has_ell_prime_roots(&self, ell: u64, field: &Field) -> bool {
        let d = self.degree();
        let m = (field.q() as u64).pow(d) - 1;
        let e = crate::arith::ell_prime_part(m, ell);
        powmod_x(e, &self.0, field) == [1]
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, c) => write!(f, "{c}X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub(crate) fn mul(a: &[u32], b: &[u32], field: &Field) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder modulo a nonzero polynomial.
pub(crate) fn rem(a: &[u32], m: &[u32], field: &Field) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = field.inv(*m.last().expect("nonzero modulus"));
    while r.len() > dm {
        let k = r.len() - 1;
        let c = field.mul(r[k], lead_inv);
        for i in 0..=dm {
            r[k - dm + i] = field.sub(r[k - dm + i], field.mul(c, m[i]));
        }
        r = trim(r);
    }
    r
}

#[cfg(test)]
pub(crate) fn gcd(a: &[u32], b: &[u32], field: &Field) -> Vec<u32> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, field);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = field.inv(lead);
        a.iter_mut().for_each(|c| *c = field.mul(*c, inv));
    }
    a
}

pub(crate) fn powmod(base: &[u32], mut e: u64, m: &[u32], field: &Field) -> Vec<u32> {
    let mut acc = rem(&[1], m, field);
    let mut b = rem(base, m, field);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, field), m, field);
        }
        b = rem(&mul(&b, &b, field), m, field);
        e >>= 1;
    }
    acc
}

/// `X^e mod m`.
pub(crate) fn powmod_x(e: u64, m: &[u32], field: &Field) -> Vec<u32> {
    powmod(&[0, 1], e, m, field)
}

fn monic_from_index(mut idx: u64, d: usize, q: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push((idx % q) as u32);
        idx /= q;
    }
    c.push(1);
    c
}

fn index_of_monic(c: &[u32], q: u64) -> u64 {
    c[..c.len() - 1].iter().rev().fold(0, |acc, &x| acc * q + x as u64)
}

/// All monic irreducibles of degree `1..=maxdeg`, grouped by degree
/// (index 0 unused), each group sorted. Found by sieving out every product
/// of a lower-degree irreducible with a monic cofactor.
pub fn irreducibles(maxdeg: u32, field: &Field) -> Result<Vec<Vec<FqPoly>>> {
    let q = field.q() as u64;
    let mut by_degree: Vec<Vec<FqPoly>> = vec![Vec::new()];
    for d in 1..=maxdeg as usize {
        let total = q
            .checked_pow(d as u32)
            .filter(|&t| t <= SIEVE_LIMIT)
            .ok_or_else(|| Error::TooLarge(format!("{q}^{d} monic polynomials of degree {d}")))?;
        let mut reducible = vec![false; total as usize];
        for a in 1..=d / 2 {
            let cof = q.pow((d - a) as u32);
            for g in &by_degree[a] {
                for h in 0..cof {
                    let prod = mul(g.coeffs(), &monic_from_index(h, d - a, q), field);
                    reducible[index_of_monic(&prod, q) as usize] = true;
                }
            }
        }
        let mut found: Vec<FqPoly> =
            (0..total).filter(|&i| !reducible[i as usize]).map(|i| FqPoly(monic_from_index(i, d, q))).collect();
        found.sort();
        by_degree.push(found);
    }
    Ok(by_degree)
}
