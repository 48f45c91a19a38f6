//! Orders of basic and defect subgroups as ℓ-exponents, and the check that
//! the principal block's defect group is a Sylow ℓ-subgroup.

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{digits, valuation};
use crate::error::Result;
use crate::gfpoly::ell_params;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    Sp,
    SoOdd,
    Csp,
}

/// `|Sp_2n(q)| = q^(n²) ∏ (q^(2i) - 1)`, equal to `|SO_(2n+1)(q)|`;
/// `|CSp_2n(q)| = (q-1)|Sp_2n(q)|`.
pub fn group_order(kind: OrderKind, n: u32, q: u64) -> BigUint {
    let qb = BigUint::from(q);
    let mut order = qb.pow(n * n);
    for i in 1..=n {
        order *= qb.pow(2 * i) - 1u32;
    }
    match kind {
        OrderKind::Sp | OrderKind::SoOdd => order,
        OrderKind::Csp => order * (q - 1),
    }
}

pub fn big_valuation(x: &BigUint, ell: u64) -> u32 {
    let ell = BigUint::from(ell);
    let zero = BigUint::from(0u32);
    let mut x = x.clone();
    let mut v = 0;
    while &x % &ell == zero {
        x /= &ell;
        v += 1;
    }
    v
}

/// Parameters of `R_{m,α,γ,c}`: the central product `Z_α E_γ` of order
/// `ℓ^(a+α+2γ)` wreathed in turn with the regular elementary abelian groups
/// `A_(c_1), A_(c_2), …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalOrderData {
    pub ell: u64,
    pub a: u32,
    pub alpha: u32,
    pub gamma: u32,
    pub c: Vec<u32>,
}

impl LocalOrderData {
    /// `D_{m,α,β} = R_{m,α,0,(1,…,1)}` with β ones.
    pub fn defect(ell: u64, a: u32, alpha: u32, beta: u32) -> Self {
        Self { ell, a, alpha, gamma: 0, c: vec![1; beta as usize] }
    }

    /// `log_ℓ |Z_α E_γ|`.
    pub fn base_exponent(&self) -> u64 {
        (self.a + self.alpha + 2 * self.gamma) as u64
    }

    /// `log_ℓ |R_{m,α,γ,c}|`: each `≀ A_c` sends `x` to `x·ℓ^c + c`.
    pub fn exponent(&self) -> u64 {
        self.c.iter().fold(self.base_exponent(), |x, &c| x * self.ell.pow(c) + c as u64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowReport {
    pub n: u32,
    pub q: u64,
    pub ell: u64,
    pub e: u32,
    pub a: u32,
    /// `⌊n/e⌋` and its base-ℓ digits, least significant first.
    pub w: u64,
    pub digits: Vec<u64>,
    /// `Σ r_β log_ℓ |D_{·,0,β}|`.
    pub defect_exponent: u64,
    /// `Σ_{j ≤ w} (a + v_ℓ(j))`.
    pub formula_exponent: u64,
    /// `v_ℓ(|Sp_2n(q)|)` from the exact order.
    pub order_exponent: u64,
}

impl SylowReport {
    pub fn passed(&self) -> bool {
        self.defect_exponent == self.order_exponent && self.formula_exponent == self.order_exponent
    }
}

pub fn sylow_check(n: u32, q: u64, ell: u64) -> Result<SylowReport> {
    let p = ell_params(q, ell)?;
    let w = (n / p.e) as u64;
    let r = digits(w, ell);
    let defect_exponent =
        r.iter().enumerate().map(|(beta, &rb)| rb * LocalOrderData::defect(ell, p.a, 0, beta as u32).exponent()).sum();
    let formula_exponent = (1..=w).map(|j| (p.a + valuation(j, ell)) as u64).sum();
    let order_exponent = big_valuation(&group_order(OrderKind::Sp, n, q), ell) as u64;
    Ok(SylowReport { n, q, ell, e: p.e, a: p.a, w, digits: r, defect_exponent, formula_exponent, order_exponent })
}
