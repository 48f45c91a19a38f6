//! Polynomials over finite fields and the families ℱ₀, ℱ₁, ℱ₂.

mod field;
mod poly;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use field::{Field, FieldInfo};
pub use poly::{irreducibles, FqPoly};

use crate::arith::{is_prime, mult_order, pow_mod};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    F0,
    F1,
    F2,
}

/// ℓ-dependent arithmetic: `e` is the order of q² mod ℓ, `a` the ℓ-adic
/// valuation of q^(2e) − 1, and `linear` is true when ℓ divides q^e − 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EllParams {
    pub q: u64,
    pub ell: u64,
    pub e: u32,
    pub a: u32,
    pub linear: bool,
}

impl EllParams {
    pub fn epsilon(&self) -> i8 {
        if self.linear {
            1
        } else {
            -1
        }
    }
}

pub fn ell_params(q: u64, ell: u64) -> Result<EllParams> {
    if ell % 2 == 0 || !is_prime(ell) {
        return Err(Error::BadEll(ell));
    }
    if q % ell == 0 {
        return Err(Error::EllDividesQ { ell, q });
    }
    let q2 = q % ell * (q % ell) % ell;
    let e = mult_order(q2, ell) as u32;
    let mut a = 1;
    let mut modulus = ell;
    while let Some(next) = modulus.checked_mul(ell) {
        if pow_mod(q, 2 * e as u64, next) != 1 {
            break;
        }
        modulus = next;
        a += 1;
    }
    let linear = pow_mod(q, e as u64, ell) == 1;
    Ok(EllParams { q, ell, e, a, linear })
}

/// One element Γ of ℱ: a single polynomial (ℱ₀, ℱ₁) or a dual pair (ℱ₂).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PolyClass {
    pub kind: Kind,
    /// Γ itself, or the lexicographically smaller member of the pair.
    pub delta: FqPoly,
    pub partner: Option<FqPoly>,
    /// Contribution to the dimension per unit of multiplicity.
    pub degree: u32,
    pub delta_gamma: u32,
    pub epsilon: Option<i8>,
    pub e_gamma: u32,
    pub ell_prime_roots: bool,
}

impl PolyClass {
    pub fn members(&self) -> Vec<&FqPoly> {
        std::iter::once(&self.delta).chain(self.partner.as_ref()).collect()
    }

    pub fn is_f0(&self) -> bool {
        self.kind == Kind::F0
    }

    /// `X − 1`.
    pub fn is_x_minus_one(&self, field: &Field) -> bool {
        self.kind == Kind::F0 && self.delta == FqPoly::linear(1, field)
    }

    /// `X + 1` for odd q.
    pub fn is_x_plus_one(&self, field: &Field) -> bool {
        self.kind == Kind::F0 && field.p() != 2 && self.delta == FqPoly::linear(field.minus_one(), field)
    }

    /// 2 for ℱ₀, 1 otherwise.
    pub fn beta(&self) -> u32 {
        if self.is_f0() {
            2
        } else {
            1
        }
    }

    /// JSON form: the coefficient list, or the pair of lists for ℱ₂.
    pub fn gamma_json(&self) -> serde_json::Value {
        match &self.partner {
            None => serde_json::to_value(&self.delta),
            Some(p) => serde_json::to_value([&self.delta, p]),
        }
        .expect("polynomials serialize")
    }
}

impl fmt::Display for PolyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.partner {
            None => write!(f, "{}", self.delta),
            Some(p) => write!(f, "{{{},{}}}", self.delta, p),
        }
    }
}

pub fn e_gamma(kind: Kind, delta_gamma: u32, params: &EllParams) -> u32 {
    let ell = params.ell;
    let x = pow_mod(params.q, delta_gamma as u64, ell);
    match kind {
        Kind::F0 => params.e,
        Kind::F1 => mult_order((ell - x) % ell, ell) as u32,
        Kind::F2 => mult_order(x, ell) as u32,
    }
}

/// Every monic irreducible of degree `<= maxdeg` other than `X`, grouped
/// into classes; ℱ₀ first, then by (degree, kind, coefficients).
pub fn classify(field: &Field, maxdeg: u32, params: &EllParams) -> Result<Vec<PolyClass>> {
    if field.q() as u64 % params.ell == 0 {
        return Err(Error::EllDividesQ { ell: params.ell, q: field.q() as u64 });
    }
    let ell = params.ell;
    let irr = irreducibles(maxdeg, field)?;
    let x_minus_one = FqPoly::linear(1, field);
    let x_plus_one = FqPoly::linear(field.minus_one(), field);
    let mut f0 = Vec::new();
    let mut rest = Vec::new();
    for delta in irr.into_iter().flatten() {
        if delta.constant() == 0 {
            continue;
        }
        let dual = delta.dual(field)?;
        let roots = delta.has_ell_prime_roots(ell, field);
        let d = delta.degree();
        if delta == x_minus_one || delta == x_plus_one {
            f0.push(PolyClass {
                kind: Kind::F0,
                delta,
                partner: None,
                degree: 1,
                delta_gamma: 1,
                epsilon: None,
                e_gamma: params.e,
                ell_prime_roots: roots,
            });
        } else if dual == delta {
            debug_assert!(d % 2 == 0);
            rest.push(PolyClass {
                kind: Kind::F1,
                delta,
                partner: None,
                degree: d,
                delta_gamma: d / 2,
                epsilon: Some(-1),
                e_gamma: e_gamma(Kind::F1, d / 2, params),
                ell_prime_roots: roots,
            });
        } else if delta < dual {
            rest.push(PolyClass {
                kind: Kind::F2,
                delta,
                partner: Some(dual),
                degree: 2 * d,
                delta_gamma: d,
                epsilon: Some(1),
                e_gamma: e_gamma(Kind::F2, d, params),
                ell_prime_roots: roots,
            });
        }
    }
    f0.sort_by_key(|c| c.delta != x_minus_one);
    rest.sort_by(|a, b| (a.degree, a.kind, &a.delta).cmp(&(b.degree, b.kind, &b.delta)));
    f0.extend(rest);
    Ok(f0)
}

/// `classify` from bare parameters.
pub fn classify_f(q: u64, maxdeg: u32, ell: u64) -> Result<(Field, EllParams, Vec<PolyClass>)> {
    let params = ell_params(q, ell)?;
    let field = Field::new(q)?;
    let classes = classify(&field, maxdeg, &params)?;
    Ok((field, params, classes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn find<'a>(classes: &'a [PolyClass], coeffs: &[u32]) -> &'a PolyClass {
        classes.iter().find(|c| c.members().iter().any(|m| m.coeffs() == coeffs)).unwrap()
    }

    #[test]
    fn ell_param_examples() {
        let p = ell_params(3, 5).unwrap();
        assert_eq!((p.e, p.a, p.epsilon()), (2, 1, -1));
        let p = ell_params(3, 13).unwrap();
        assert_eq!((p.e, p.a, p.epsilon()), (3, 1, 1));
        let p = ell_params(2, 3).unwrap();
        assert_eq!((p.e, p.a, p.epsilon()), (1, 1, -1));
        let p = ell_params(8, 3).unwrap();
        assert_eq!((p.e, p.a), (1, 2));
        assert_eq!(ell_params(3, 2), Err(Error::BadEll(2)));
        assert_eq!(ell_params(9, 3), Err(Error::EllDividesQ { ell: 3, q: 9 }));
        assert_eq!(ell_params(3, 9), Err(Error::BadEll(9)));
    }

    #[test]
    fn ell_params_match_definition() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            for ell in [3u64, 5, 7, 11, 13] {
                let Ok(p) = ell_params(q, ell) else { continue };
                let big = |k: u32| num_bigint::BigUint::from(q).pow(k);
                let one = num_bigint::BigUint::from(1u32);
                let m = big(2 * p.e) - &one;
                let mut v = 0;
                let mut t = m.clone();
                while &t % ell == num_bigint::BigUint::from(0u32) {
                    t /= ell;
                    v += 1;
                }
                assert_eq!(v, p.a);
                let lin = (big(p.e) - &one) % ell == num_bigint::BigUint::from(0u32);
                let uni = (big(p.e) + &one) % ell == num_bigint::BigUint::from(0u32);
                assert!(lin != uni);
                assert_eq!(lin, p.linear);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let (_, _, c) = classify_f(2, 1, 3).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].kind, Kind::F0);
        assert_eq!(c[0].delta.coeffs(), &[1, 1]);

        let (field, params, c) = classify_f(3, 2, 5).unwrap();
        assert!(c[0].is_x_minus_one(&field) && c[1].is_x_plus_one(&field));
        let g = find(&c, &[1, 0, 1]);
        assert_eq!((g.kind, g.delta_gamma, g.epsilon, g.e_gamma), (Kind::F1, 1, Some(-1), 4));
        let g = find(&c, &[2, 1, 1]);
        assert_eq!((g.kind, g.delta_gamma, g.epsilon, g.e_gamma), (Kind::F2, 2, Some(1), 2));
        assert_eq!(g.partner.as_ref().unwrap().coeffs(), &[2, 2, 1]);
        assert_eq!(c[0].e_gamma, params.e);
    }

    #[test]
    fn classes_partition_the_irreducibles() {
        for (q, maxdeg, ell) in [(3u64, 5u32, 5u64), (4, 4, 3), (5, 3, 3), (9, 3, 5), (2, 8, 7)] {
            let (field, _, classes) = classify_f(q, maxdeg, ell).unwrap();
            let irr = irreducibles(maxdeg, &field).unwrap();
            let wanted: usize = irr.iter().map(Vec::len).sum::<usize>() - 1;
            let got: usize = classes.iter().map(|c| c.members().len()).sum();
            assert_eq!(got, wanted);
            let mut seen = std::collections::HashSet::new();
            for c in &classes {
                for m in c.members() {
                    assert!(seen.insert(m.clone()));
                }
                if c.kind == Kind::F1 {
                    assert_eq!(c.degree % 2, 0);
                }
                if let Some(p) = &c.partner {
                    assert_eq!(p.has_ell_prime_roots(ell, &field), c.ell_prime_roots);
                    assert!(c.delta < *p);
                }
                if c.is_x_minus_one(&field) {
                    assert!(c.ell_prime_roots);
                }
            }
            let f0 = classes.iter().filter(|c| c.is_f0()).count();
            assert_eq!(f0, if q % 2 == 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn ell_prime_roots_by_root_orders() {
        // Over F_p every root of a linear factor is an element of F_p^×.
        let field = Field::new(7).unwrap();
        for ell in [3u64, 5] {
            let params = ell_params(7, ell).unwrap();
            for c in classify(&field, 1, &params).unwrap() {
                let root = field.neg(c.delta.constant());
                assert_eq!(c.ell_prime_roots, field.order(root) as u64 % ell != 0);
            }
        }
    }

    #[test]
    fn e_gamma_examples() {
        let p = ell_params(3, 5).unwrap();
        assert_eq!(e_gamma(Kind::F0, 1, &p), 2);
        assert_eq!(e_gamma(Kind::F1, 1, &p), 4);
        assert_eq!(e_gamma(Kind::F2, 2, &p), 2);
    }

    #[test]
    fn q_nine_frobenius_permutes_classes() {
        let (field, _, classes) = classify_f(9, 2, 5).unwrap();
        let mut moved = 0;
        for c in &classes {
            let image = c.delta.frobenius(1, &field);
            let target = classes.iter().find(|d| d.members().contains(&&image)).unwrap();
            assert_eq!(target.kind, c.kind);
            assert_eq!(image.frobenius(1, &field), c.delta);
            if target != c {
                moved += 1;
            }
        }
        assert!(moved > 0);
    }
}
