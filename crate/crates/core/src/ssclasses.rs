//! Semisimple ℓ′-classes of the dual group as multiplicity functions.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gfpoly::{classify, ell_params, EllParams, Field, PolyClass};
use crate::partitions::{enumerate_partitions, partition_count, Partition};
use crate::symbols::{enumerate_symbols, Parity, Symbol};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// q odd: classes of SO_{2n+1}(q), dimension 2n+1.
    OddQ,
    /// q even: classes of Sp_{2n}(q), dimension 2n.
    EvenQ,
}

/// The field, the ℓ-data and the classes Γ that may carry multiplicity:
/// degree at most the ambient dimension and roots of ℓ′-order.
#[derive(Clone, Debug)]
pub struct Catalog {
    pub n: u32,
    pub regime: Regime,
    pub field: Field,
    pub params: EllParams,
    pub classes: Vec<PolyClass>,
    x_minus_one: usize,
    x_plus_one: Option<usize>,
}

impl Catalog {
    pub fn new(n: u32, q: u64, ell: u64) -> Result<Self> {
        Self::build(n, q, ell, true)
    }

    /// Same, but keeping classes whose roots have order divisible by ℓ.
    pub fn without_ell_prime_filter(n: u32, q: u64, ell: u64) -> Result<Self> {
        Self::build(n, q, ell, false)
    }

    fn build(n: u32, q: u64, ell: u64, filter: bool) -> Result<Self> {
        if n < 1 {
            return Err(Error::BadRank(n));
        }
        let params = ell_params(q, ell)?;
        let field = Field::new(q)?;
        let regime = if q % 2 == 1 { Regime::OddQ } else { Regime::EvenQ };
        let dim = match regime {
            Regime::OddQ => 2 * n + 1,
            Regime::EvenQ => 2 * n,
        };
        let classes: Vec<PolyClass> = classify(&field, dim, &params)?
            .into_iter()
            .filter(|c| c.degree <= dim && (!filter || c.ell_prime_roots))
            .collect();
        let x_minus_one = classes.iter().position(|c| c.is_x_minus_one(&field)).expect("X-1 always qualifies");
        let x_plus_one = classes.iter().position(|c| c.is_x_plus_one(&field));
        Ok(Self { n, regime, field, params, classes, x_minus_one, x_plus_one })
    }

    pub fn dimension(&self) -> u32 {
        match self.regime {
            Regime::OddQ => 2 * self.n + 1,
            Regime::EvenQ => 2 * self.n,
        }
    }

    pub fn x_minus_one(&self) -> usize {
        self.x_minus_one
    }

    pub fn x_plus_one(&self) -> Option<usize> {
        self.x_plus_one
    }

    pub fn class(&self, idx: usize) -> &PolyClass {
        &self.classes[idx]
    }

    pub fn index_of(&self, class: &PolyClass) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }
}

/// A multiplicity function Γ ↦ m_Γ, listing the classes (as catalog
/// indices, ascending) with nonzero multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemisimpleLabel {
    pub regime: Regime,
    pub n: u32,
    pub assignments: Vec<(usize, u32)>,
}

impl SemisimpleLabel {
    pub fn m(&self, idx: usize) -> u32 {
        self.assignments.iter().find(|(i, _)| *i == idx).map_or(0, |(_, m)| *m)
    }

    pub fn to_json(&self, catalog: &Catalog) -> Value {
        let assignments: Vec<Value> =
            self.assignments.iter().map(|&(i, m)| json!({"gamma": catalog.class(i).gamma_json(), "m": m})).collect();
        json!({"regime": self.regime, "n": self.n, "assignments": assignments})
    }

    pub fn describe(&self, catalog: &Catalog) -> String {
        let parts: Vec<String> = self.assignments.iter().map(|&(i, m)| format!("{}^{}", catalog.class(i), m)).collect();
        parts.join(" ")
    }
}

pub fn enumerate_ss_labels(catalog: &Catalog) -> Vec<SemisimpleLabel> {
    let dim = catalog.dimension();
    let others: Vec<usize> = (0..catalog.classes.len()).filter(|&i| i != catalog.x_minus_one).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(catalog: &Catalog, others: &[usize], rest: u32, cur: &mut Vec<(usize, u32)>, out: &mut Vec<SemisimpleLabel>) {
        let Some((&idx, tail)) = others.split_first() else {
            let m1 = rest;
            if catalog.regime == Regime::OddQ && m1 == 0 {
                return;
            }
            let mut a = cur.clone();
            if m1 > 0 {
                a.push((catalog.x_minus_one, m1));
            }
            a.sort_unstable();
            out.push(SemisimpleLabel { regime: catalog.regime, n: catalog.n, assignments: a });
            return;
        };
        let deg = catalog.class(idx).degree;
        let step = if Some(idx) == catalog.x_plus_one { 2 } else { 1 };
        let mut m = 0;
        while m * deg <= rest {
            if m > 0 {
                cur.push((idx, m));
            }
            go(catalog, tail, rest - m * deg, cur, out);
            if m > 0 {
                cur.pop();
            }
            m += step;
        }
    }
    go(catalog, &others, dim, &mut cur, &mut out);
    out.sort();
    out
}

/// A unipotent label for one component: a partition, or a symbol with a
/// copy index when it is a doubled degenerate symbol.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unipotent {
    Partition(Partition),
    Symbol(Symbol, Option<u8>),
}

impl Unipotent {
    pub fn to_json(&self) -> Value {
        match self {
            Unipotent::Partition(p) => json!(p),
            Unipotent::Symbol(s, None) => json!(s),
            Unipotent::Symbol(s, Some(c)) => json!({"symbol": s, "copy": c}),
        }
    }
}

impl std::fmt::Display for Unipotent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unipotent::Partition(p) => write!(f, "{p}"),
            Unipotent::Symbol(s, None) => write!(f, "{s}"),
            Unipotent::Symbol(s, Some(c)) => write!(f, "{s}#{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LabelDomain {
    Partitions { size: u32 },
    Symbols { rank: u32, parity: Parity, doubled: bool },
}

impl LabelDomain {
    pub fn labels(&self) -> Vec<Unipotent> {
        match *self {
            LabelDomain::Partitions { size } => {
                enumerate_partitions(size).into_iter().map(Unipotent::Partition).collect()
            }
            LabelDomain::Symbols { rank, parity, doubled } => {
                let mut out = Vec::new();
                for s in enumerate_symbols(rank, parity) {
                    if doubled && s.is_degenerate() && s != Symbol::empty() {
                        out.push(Unipotent::Symbol(s.clone(), Some(0)));
                        out.push(Unipotent::Symbol(s, Some(1)));
                    } else {
                        out.push(Unipotent::Symbol(s, None));
                    }
                }
                out
            }
        }
    }

    /// `labels().len()` by closed counting formulas.
    pub fn count(&self) -> u64 {
        match *self {
            LabelDomain::Partitions { size } => partition_count(size),
            LabelDomain::Symbols { rank, parity, doubled } => {
                let bip = |r: u32| (0..=r).map(|a| partition_count(a) * partition_count(r - a)).sum::<u64>();
                let degenerate = if rank % 2 == 0 { partition_count(rank / 2) } else { 0 };
                let mut total = 0;
                let mut d = if parity == Parity::Even { 0 } else { 1 };
                while d * d / 4 <= rank {
                    total += if d == 0 { (bip(rank) + degenerate) / 2 } else { bip(rank - d * d / 4) };
                    d += 2;
                }
                if doubled && parity == Parity::Even && rank > 0 {
                    total += degenerate;
                }
                total
            }
        }
    }
}

pub fn unipotent_label_domain(catalog: &Catalog, s: &SemisimpleLabel, idx: usize) -> Result<LabelDomain> {
    let m = s.m(idx);
    if m == 0 {
        return Err(Error::OutsideDomain(format!("class {} has multiplicity 0", catalog.class(idx))));
    }
    Ok(if idx == catalog.x_minus_one() {
        LabelDomain::Symbols { rank: m / 2, parity: Parity::Odd, doubled: false }
    } else if Some(idx) == catalog.x_plus_one() {
        LabelDomain::Symbols { rank: m / 2, parity: Parity::Even, doubled: s.regime == Regime::OddQ }
    } else {
        LabelDomain::Partitions { size: m }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn brute(catalog: &Catalog) -> BTreeSet<SemisimpleLabel> {
        let dim = catalog.dimension();
        let k = catalog.classes.len();
        let mut out = BTreeSet::new();
        let mut m = vec![0u32; k];
        loop {
            let total: u32 = m.iter().zip(&catalog.classes).map(|(m, c)| m * c.degree).sum();
            if total == dim {
                let ok = match catalog.regime {
                    Regime::OddQ => {
                        m[catalog.x_minus_one()] % 2 == 1 && catalog.x_plus_one().is_none_or(|i| m[i] % 2 == 0)
                    }
                    Regime::EvenQ => true,
                };
                if ok {
                    let assignments = m.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, &x)| (i, x)).collect();
                    out.insert(SemisimpleLabel { regime: catalog.regime, n: catalog.n, assignments });
                }
            }
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                m[i] += 1;
                let t: u32 = m.iter().zip(&catalog.classes).map(|(m, c)| m * c.degree).sum();
                if t <= dim {
                    break;
                }
                m[i] = 0;
                i += 1;
            }
        }
    }

    #[test]
    fn matches_brute_force() {
        for n in 1..=3 {
            for q in [2u64, 3] {
                for ell in [3u64, 5, 7] {
                    let Ok(c) = Catalog::new(n, q, ell) else { continue };
                    let labels = enumerate_ss_labels(&c);
                    let set: BTreeSet<_> = labels.iter().cloned().collect();
                    assert_eq!(set.len(), labels.len());
                    assert_eq!(set, brute(&c), "n={n} q={q} ell={ell}");
                    assert_eq!(enumerate_ss_labels(&c), labels);
                }
            }
        }
    }

    #[test]
    fn spec_examples() {
        let c = Catalog::new(2, 3, 5).unwrap();
        let labels = enumerate_ss_labels(&c);
        let (xm, xp) = (c.x_minus_one(), c.x_plus_one().unwrap());
        let has = |a: Vec<(usize, u32)>| labels.iter().any(|s| s.assignments == a);
        assert!(has(vec![(xm, 5)]));
        assert!(has(vec![(xm, 1), (xp, 4)]));
        assert!(!labels.iter().any(|s| s.m(xm) == 2));
        let x2p1 = c.classes.iter().position(|g| g.delta.coeffs() == [1, 0, 1]).unwrap();
        assert!(c.class(x2p1).ell_prime_roots);
        let mut a = vec![(xm, 1), (x2p1, 2)];
        a.sort();
        assert!(has(a));
        for s in &labels {
            assert_eq!(s.m(xp) % 2, 0);
            assert_eq!(s.m(xm) % 2, 1);
        }
    }

    #[test]
    fn filter_removal_adds_labels() {
        // 5 divides 3^4 - 1 and 3^2 + 1, so X^2+1 over F_3 has roots of order 4
        // while some quartic pairs have roots of order divisible by 5.
        for (n, q, ell) in [(2u32, 3u64, 5u64), (2, 2, 3), (3, 3, 13), (2, 5, 3)] {
            let with = enumerate_ss_labels(&Catalog::new(n, q, ell).unwrap()).len();
            let without = enumerate_ss_labels(&Catalog::without_ell_prime_filter(n, q, ell).unwrap()).len();
            assert!(without > with, "n={n} q={q} ell={ell}");
        }
    }

    #[test]
    fn domains() {
        let c = Catalog::new(2, 3, 5).unwrap();
        let s = SemisimpleLabel { regime: Regime::OddQ, n: 2, assignments: vec![(c.x_minus_one(), 5)] };
        let d = unipotent_label_domain(&c, &s, c.x_minus_one()).unwrap();
        assert_eq!(d, LabelDomain::Symbols { rank: 2, parity: Parity::Odd, doubled: false });
        assert_eq!(d.labels().len(), 6);
        assert!(unipotent_label_domain(&c, &s, c.x_plus_one().unwrap()).is_err());
        let d = LabelDomain::Symbols { rank: 1, parity: Parity::Even, doubled: true };
        assert_eq!(d.labels().len(), 2);
        let d = LabelDomain::Symbols { rank: 2, parity: Parity::Even, doubled: true };
        assert_eq!(d.labels().iter().filter(|u| matches!(u, Unipotent::Symbol(_, Some(_)))).count(), 2);
        assert_eq!(LabelDomain::Partitions { size: 3 }.labels().len(), 3);
    }

    #[test]
    fn domain_count_formula() {
        for rank in 0..=8 {
            for parity in [Parity::Even, Parity::Odd] {
                for doubled in [false, true] {
                    let d = LabelDomain::Symbols { rank, parity, doubled };
                    assert_eq!(d.count(), d.labels().len() as u64, "{d:?}");
                }
            }
        }
        for size in 0..12 {
            let d = LabelDomain::Partitions { size };
            assert_eq!(d.count(), d.labels().len() as u64);
        }
    }

    #[test]
    fn json_shape() {
        let c = Catalog::new(2, 3, 5).unwrap();
        let s = SemisimpleLabel { regime: Regime::OddQ, n: 2, assignments: vec![(c.x_minus_one(), 5)] };
        assert_eq!(s.to_json(&c).to_string(), r#"{"assignments":[{"gamma":[2,1],"m":5}],"n":2,"regime":"odd-q"}"#);
    }
}
