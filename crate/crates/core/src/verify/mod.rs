//! Blockwise bijections between weight and Brauer labels, their
//! equivariance, and the Sylow exponent check.

pub mod sylow;

use std::collections::{BTreeSet, HashSet};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::labels::{BlockLabel, Core, GroupKind, IBrLabel, KappaSet, Paired, QTuple, Setting, WeightLabel};
use crate::partitions::compose;
use crate::ssclasses::Unipotent;
use crate::symbols::{compose_symbol, compose_symbol_with_copy, Symbol};

pub use sylow::{group_order, sylow_check, LocalOrderData, OrderKind, SylowReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    CountMismatch,
    NonInjective,
    Partial,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Ok => "ok",
            Status::CountMismatch => "count-mismatch",
            Status::NonInjective => "non-injective",
            Status::Partial => "partial",
        })
    }
}

#[derive(Clone, Debug)]
pub struct BijectionReport {
    pub block: BlockLabel,
    pub ibr_count: usize,
    pub weight_count: usize,
    pub mapped: Vec<(IBrLabel, WeightLabel<QTuple>)>,
    pub status: Status,
}

/// `λ_Γ = κ_Γ * Q_Γ` componentwise, with the copy of a doubled degenerate
/// symbol taken from the block (case III) or from `(Q, i)`.
pub fn weight_to_ibr(st: &Setting, w: &WeightLabel<QTuple>) -> Result<IBrLabel> {
    let b = &w.block;
    let s = &st.ss[b.ss];
    let xp = st.x_plus_one_slot(b.ss);
    let (q, fixed) = match &w.data {
        Paired::Plain(q) | Paired::Pair(q, _) => (q, None),
        Paired::Fixed(q, j) => (q, Some(*j)),
    };
    if q.len() != b.cores.len() {
        return Err(Error::OutsideDomain("weight tuple does not match the block".into()));
    }
    let mut lambda = Vec::with_capacity(q.len());
    for (slot, ((&(idx, _), core), qs)) in s.assignments.iter().zip(&b.cores).zip(q).enumerate() {
        let e = st.catalog.class(idx).e_gamma;
        lambda.push(match core {
            Core::Partition(k) => Unipotent::Partition(compose(k, qs, e)?),
            Core::Symbol(k) => {
                let doubled = st.group == GroupKind::Csp && xp == Some(slot);
                match (doubled, fixed, b.kappa) {
                    (true, Some(j), _) => {
                        let (sym, c) = compose_symbol_with_copy(k, qs, j, e, st.mode())?;
                        Unipotent::Symbol(sym, Some(c))
                    }
                    (true, None, KappaSet::Copy(c)) => Unipotent::Symbol(compose_symbol(k, qs, e, st.mode())?, Some(c)),
                    _ => {
                        let sym = compose_symbol(k, qs, e, st.mode())?;
                        if doubled && sym.is_degenerate() && sym != Symbol::empty() {
                            return Err(Error::OutsideDomain(format!("{sym} needs a copy index")));
                        }
                        Unipotent::Symbol(sym, None)
                    }
                }
            }
        });
    }
    Ok(IBrLabel { ss: b.ss, center: b.center, lambda })
}

pub fn build_bijection(st: &Setting, block: &BlockLabel, ibr: &[IBrLabel]) -> BijectionReport {
    let weights = st.weight_labels_q(block);
    let weight_count = weights.len();
    let targets: HashSet<&IBrLabel> = ibr.iter().collect();
    let mut mapped = Vec::with_capacity(weight_count);
    for w in weights {
        if let Ok(x) = weight_to_ibr(st, &w) {
            if targets.contains(&x) {
                mapped.push((x, w));
            }
        }
    }
    let distinct: HashSet<&IBrLabel> = mapped.iter().map(|(x, _)| x).collect();
    let status = if weight_count != ibr.len() {
        Status::CountMismatch
    } else if mapped.len() < weight_count {
        Status::Partial
    } else if distinct.len() != mapped.len() {
        Status::NonInjective
    } else {
        Status::Ok
    };
    BijectionReport { block: block.clone(), ibr_count: ibr.len(), weight_count, mapped, status }
}

#[derive(Clone, Debug)]
pub struct BlockSummary {
    pub block: BlockLabel,
    pub ibr: usize,
    pub alp: usize,
    /// `|i𝒲⁰|` from the K-form and the pre-pairing Q-form.
    pub k_count: usize,
    pub q0_count: usize,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct GroupReport {
    pub group: GroupKind,
    pub n: u32,
    pub q: u64,
    pub ell: u64,
    pub blocks: Vec<BlockSummary>,
    /// Blocks left unchecked when the budget ran out.
    pub skipped: usize,
    pub total_labels: u64,
    pub sum_ibr: u64,
}

impl GroupReport {
    pub fn partition_ok(&self) -> bool {
        self.total_labels == self.sum_ibr
    }

    pub fn kq_ok(&self) -> bool {
        self.blocks.iter().all(|b| b.k_count == b.q0_count)
    }

    pub fn failing(&self) -> impl Iterator<Item = &BlockSummary> {
        self.blocks.iter().filter(|b| b.status != Status::Ok || b.k_count != b.q0_count)
    }

    pub fn passed(&self) -> bool {
        self.skipped == 0 && self.partition_ok() && self.failing().next().is_none()
    }
}

/// Checks every block; blocks not started before `budget` elapses are
/// counted in `skipped`.
pub fn verify_group(st: &Setting, budget: Option<Duration>) -> GroupReport {
    let start = Instant::now();
    let blocks = st.blocks_with_labels();
    let sum_ibr = blocks.iter().map(|(_, v)| v.len() as u64).sum();
    let checked: Vec<Option<BlockSummary>> = blocks
        .par_iter()
        .map(|(b, ibr)| {
            if budget.is_some_and(|t| start.elapsed() > t) {
                return None;
            }
            let report = build_bijection(st, b, ibr);
            Some(BlockSummary {
                block: b.clone(),
                ibr: report.ibr_count,
                alp: report.weight_count,
                k_count: st.weight_labels_k(b).len(),
                q0_count: st.q_tuples(b).len(),
                status: report.status,
            })
        })
        .collect();
    let skipped = checked.iter().filter(|c| c.is_none()).count();
    GroupReport {
        group: st.group,
        n: st.n(),
        q: st.q(),
        ell: st.ell(),
        blocks: checked.into_iter().flatten().collect(),
        skipped,
        total_labels: st.total_label_count(),
        sum_ibr,
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct EquivarianceReport {
    pub center_checked: usize,
    pub field_checked: usize,
    pub orbits_checked: usize,
    pub violations: Vec<String>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Expected length of the `z̃₀`-orbit of a Brauer label: `N = (q-1)_ℓ'`
/// without X+1 or for a doubled degenerate X+1 symbol, `N/2` otherwise.
pub fn expected_center_orbit(st: &Setting, x: &IBrLabel) -> usize {
    let n = st.center_order as usize;
    match st.x_plus_one_slot(x.ss) {
        None => n,
        Some(slot) if matches!(x.lambda[slot], Unipotent::Symbol(_, Some(_))) => n,
        Some(_) => n / 2,
    }
}

fn orbit_len<T: PartialEq + Clone>(x: &T, f: impl Fn(&T) -> T) -> usize {
    let mut y = f(x);
    let mut n = 1;
    while y != *x {
        y = f(&y);
        n += 1;
    }
    n
}

fn check_block(st: &Setting, block: &BlockLabel, ibr: &[IBrLabel], field_steps: &[u32]) -> EquivarianceReport {
    let mut r = EquivarianceReport::default();
    let omega = |w: &WeightLabel<QTuple>| weight_to_ibr(st, w).ok();
    for (x, w) in build_bijection(st, block, ibr).mapped {
        if st.group == GroupKind::Csp {
            r.center_checked += 1;
            let zx = st.act_center_ibr(&x).expect("conformal group");
            if omega(&st.act_center_weight(&w).expect("conformal group")).as_ref() != Some(&zx) {
                r.violations.push(format!("center: weight of {x:?}"));
            }
            if st.block_of(&zx).ok() != st.act_center_block(block).ok() {
                r.violations.push(format!("center: block of {x:?}"));
            }
        }
        for &k in field_steps {
            r.field_checked += 1;
            let sx = st.act_field_ibr(&x, k);
            if omega(&st.act_field_weight(&w, k)).as_ref() != Some(&sx) {
                r.violations.push(format!("field {k}: weight of {x:?}"));
            }
            if st.block_of(&sx).ok().as_ref() != Some(&st.act_field_block(block, k)) {
                r.violations.push(format!("field {k}: block of {x:?}"));
            }
        }
    }
    if st.group == GroupKind::Csp {
        for x in ibr {
            r.orbits_checked += 1;
            let len = orbit_len(x, |y| st.act_center_ibr(y).expect("conformal group"));
            let expect = expected_center_orbit(st, x);
            if len != expect {
                r.violations.push(format!("orbit of {x:?}: {len} != {expect}"));
            }
        }
    }
    r
}

/// The bijection against `z̃₀` (conformal group only) and against the
/// Frobenius generator `x ↦ x^p`.
pub fn verify_equivariance(st: &Setting) -> EquivarianceReport {
    let field_steps = [1];
    let parts: Vec<EquivarianceReport> =
        st.blocks_with_labels().par_iter().map(|(b, ibr)| check_block(st, b, ibr, &field_steps)).collect();
    let mut out = EquivarianceReport::default();
    for p in parts {
        out.center_checked += p.center_checked;
        out.field_checked += p.field_checked;
        out.orbits_checked += p.orbits_checked;
        out.violations.extend(p.violations);
    }
    if st.group == GroupKind::Csp {
        let all = st.all_ibr_labels();
        let image: BTreeSet<IBrLabel> = all.iter().map(|x| st.act_center_ibr(x).expect("conformal group")).collect();
        if image.len() != all.len() {
            out.violations.push("center action is not a permutation".into());
        }
    }
    out
}
