//! Small integer helpers shared by the field and verification code.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, f))` when `q = p^f` with `p` prime and `f >= 1`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while q % p != 0 {
        p += 1;
    }
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

/// ℓ-adic valuation of a nonzero integer.
pub fn valuation(mut x: u64, ell: u64) -> u32 {
    assert!(x != 0 && ell > 1);
    let mut v = 0;
    while x % ell == 0 {
        x /= ell;
        v += 1;
    }
    v
}

/// The part of `x` coprime to `ell`.
pub fn ell_prime_part(mut x: u64, ell: u64) -> u64 {
    assert!(x != 0 && ell > 1);
    while x % ell == 0 {
        x /= ell;
    }
    x
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

/// Multiplicative order of `x` modulo `m`; `x` must be a unit.
pub fn mult_order(x: u64, m: u64) -> u64 {
    let x = x % m;
    assert!(gcd(x, m) == 1, "{x} is not a unit mod {m}");
    let mut k = 1;
    let mut y = x % m;
    while y != 1 % m {
        y = y * x % m;
        k += 1;
    }
    k
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Base-`b` digits of `x`, least significant first.
pub fn digits(mut x: u64, b: u64) -> Vec<u64> {
    let mut out = Vec::new();
    while x > 0 {
        out.push(x % b);
        x /= b;
    }
    out
}
