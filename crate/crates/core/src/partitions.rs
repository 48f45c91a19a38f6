//! Partitions, β-sets and the abacus calculus of e-cores and e-quotients.
//!
//! The e-quotient is read from an abacus whose bead count is the least
//! multiple of `e` that is at least the number of parts. Runner `i` holds
//! the beads congruent to `i` mod `e`, and the quotient lists runners
//! `0, 1, ..., e-1` in that order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has a zero part")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(Self(parts))
    }

    /// Drops zeros and sorts; never fails.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Self {
        let width = self.0.first().copied().unwrap_or(0);
        Self((1..=width).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// The β-set with `beads` beads. Panics if `beads` is smaller than the
    /// number of parts.
    pub fn beta_set(&self, beads: usize) -> BetaSet {
        assert!(beads >= self.len(), "{beads} beads cannot hold {self}");
        let mut b: Vec<u32> =
            (0..beads).map(|i| self.0.get(i).copied().unwrap_or(0) + (beads - 1 - i) as u32).collect();
        b.reverse();
        BetaSet(b)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_list(f, &self.0)
    }
}

pub(crate) fn write_list(f: &mut fmt::Formatter<'_>, xs: &[u32]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

pub(crate) fn parse_list(s: &str) -> std::result::Result<Vec<u32>, String> {
    let t = s.trim();
    let t = t.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(t).trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',').map(|x| x.trim().parse::<u32>().map_err(|e| format!("{x:?}: {e}"))).collect()
}

impl FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::new(parse_list(s).map_err(Error::InvalidPartition)?)
    }
}

/// A finite set of distinct non-negative integers, stored ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BetaSet(Vec<u32>);

impl BetaSet {
    pub fn new(mut beads: Vec<u32>) -> Result<Self> {
        beads.sort_unstable();
        if beads.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPartition(format!("repeated bead in {beads:?}")));
        }
        Ok(Self(beads))
    }

    pub(crate) fn from_sorted(beads: Vec<u32>) -> Self {
        debug_assert!(beads.windows(2).all(|w| w[0] < w[1]));
        Self(beads)
    }

    pub fn beads(&self) -> &[u32] {
        &self.0
    }

    pub fn count(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    /// Moves every bead up by `k` and fills positions `0..k`.
    pub fn shift(&self, k: u32) -> Self {
        Self((0..k).chain(self.0.iter().map(|b| b + k)).collect())
    }

    pub fn partition(&self) -> Partition {
        Partition::from_unsorted(self.0.iter().enumerate().map(|(i, &b)| b - i as u32).collect())
    }

    /// Bead positions on each of the `e` runners.
    pub fn runners(&self, e: u32) -> Vec<BetaSet> {
        let mut r = vec![Vec::new(); e as usize];
        for &b in &self.0 {
            r[(b % e) as usize].push(b / e);
        }
        r.into_iter().map(BetaSet).collect()
    }

    pub fn from_runners(runners: &[BetaSet]) -> Self {
        let e = runners.len() as u32;
        let mut b: Vec<u32> =
            runners.iter().enumerate().flat_map(|(i, r)| r.0.iter().map(move |&x| i as u32 + e * x)).collect();
        b.sort_unstable();
        Self(b)
    }

    /// Slides every bead as far up its runner as it can go.
    pub fn push_up(&self, e: u32) -> Self {
        let runners: Vec<BetaSet> =
            self.runners(e).into_iter().map(|r| BetaSet((0..r.count() as u32).collect())).collect();
        Self::from_runners(&runners)
    }
}

fn abacus_beads(len: usize, e: u32) -> usize {
    len.div_ceil(e as usize) * e as usize
}

pub fn e_core(lambda: &Partition, e: u32) -> Partition {
    assert!(e >= 1, "e must be positive");
    let n = abacus_beads(lambda.len(), e);
    lambda.beta_set(n).push_up(e).partition()
}

pub fn is_e_core(lambda: &Partition, e: u32) -> bool {
    e_core(lambda, e) == *lambda
}

pub fn e_quotient(lambda: &Partition, e: u32) -> Vec<Partition> {
    assert!(e >= 1, "e must be positive");
    let n = abacus_beads(lambda.len(), e);
    lambda.beta_set(n).runners(e).iter().map(BetaSet::partition).collect()
}

pub fn e_weight(lambda: &Partition, e: u32) -> u32 {
    (lambda.size() - e_core(lambda, e).size()) / e
}

/// The partition with e-core `kappa` and e-quotient `quotient`.
pub fn compose(kappa: &Partition, quotient: &[Partition], e: u32) -> Result<Partition> {
    if e == 0 {
        return Err(Error::ZeroE);
    }
    if quotient.len() != e as usize {
        return Err(Error::QuotientLength { expected: e as usize, found: quotient.len() });
    }
    if !is_e_core(kappa, e) {
        return Err(Error::NotACore(kappa.to_string(), e));
    }
    let mut n = abacus_beads(kappa.len(), e);
    let runners = loop {
        let r = kappa.beta_set(n).runners(e);
        if r.iter().zip(quotient).all(|(r, q)| r.count() >= q.len()) {
            break r;
        }
        n += e as usize;
    };
    let filled: Vec<BetaSet> = runners.iter().zip(quotient).map(|(r, q)| q.beta_set(r.count())).collect();
    Ok(BetaSet::from_runners(&filled).partition())
}

/// All partitions of `n` in ascending lexicographic order of their parts.
pub fn enumerate_partitions(n: u32) -> Vec<Partition> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in 1..=rest.min(max) {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All `b`-tuples of partitions of total size `w`, sorted.
pub fn multipartitions(b: usize, w: u32) -> Vec<Vec<Partition>> {
    let by_size: Vec<Vec<Partition>> = (0..=w).map(enumerate_partitions).collect();
    fn go(
        slots: usize,
        rest: u32,
        by_size: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = if slots == 1 { rest } else { 0 };
        for k in lo..=rest {
            for p in &by_size[k as usize] {
                cur.push(p.clone());
                go(slots - 1, rest - k, by_size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    if b == 0 {
        if w == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(b, w, &by_size, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn enumerate_with_core(kappa: &Partition, e: u32, w: u32) -> Result<Vec<Partition>> {
    if e == 0 {
        return Err(Error::ZeroE);
    }
    if !is_e_core(kappa, e) {
        return Err(Error::NotACore(kappa.to_string(), e));
    }
    let mut out = multipartitions(e as usize, w).iter().map(|q| compose(kappa, q, e)).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// The e-cores of size `t`.
pub fn e_cores_of_size(e: u32, t: u32) -> Vec<Partition> {
    enumerate_partitions(t).into_iter().filter(|p| is_e_core(p, e)).collect()
}

/// p(n) by Euler's pentagonal recurrence.
pub fn partition_count(n: u32) -> u64 {
    let n = n as usize;
    let mut p = vec![0u64; n + 1];
    p[0] = 1;
    for m in 1..=n {
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * p[m - g1] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * p[m - g2] as i128;
            }
        }
        p[m] = acc as u64;
    }
    p[n]
}

/// Number of `b`-tuples of partitions of total size `w`.
pub fn multipartition_count(b: usize, w: u32) -> u64 {
    let w = w as usize;
    let p: Vec<u64> = (0..=w as u32).map(partition_count).collect();
    let mut acc = vec![0u64; w + 1];
    acc[0] = 1;
    for _ in 0..b {
        let mut next = vec![0u64; w + 1];
        for (i, &a) in acc.iter().enumerate() {
            for j in 0..=w - i {
                next[i + j] += a * p[j];
            }
        }
        acc = next;
    }
    acc[w]
}

/// The ℓ-core tower: level `d` lists `ell^d` cores, read off by iterating
/// the quotient. Trailing all-empty levels are dropped; level 0 is always
/// present.
pub fn core_tower(lambda: &Partition, ell: u32) -> Vec<Vec<Partition>> {
    let mut levels = Vec::new();
    let mut current = vec![lambda.clone()];
    while levels.is_empty() || current.iter().any(|p| !p.is_empty()) {
        levels.push(current.iter().map(|p| e_core(p, ell)).collect());
        current = current.iter().flat_map(|p| e_quotient(p, ell)).collect();
    }
    levels
}

/// Inverse of [`core_tower`]. Entries must be ℓ-cores and level `d` must
/// have `ell^d` entries.
pub fn from_core_tower(levels: &[Vec<Partition>], ell: u32) -> Result<Partition> {
    fn build(levels: &[Vec<Partition>], ell: u32, depth: usize, idx: usize) -> Result<Partition> {
        let Some(level) = levels.get(depth) else {
            return Ok(Partition::empty());
        };
        let core =
            level.get(idx).ok_or_else(|| Error::InvalidPartition(format!("tower level {depth} has no entry {idx}")))?;
        let quotient = (0..ell as usize)
            .map(|j| build(levels, ell, depth + 1, idx * ell as usize + j))
            .collect::<Result<Vec<_>>>()?;
        compose(core, &quotient, ell)
    }
    build(levels, ell, 0, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    // Rim hook removal straight from the diagram: the hook at cell (i, j)
    // with leg L is replaced by rows lambda[i+1]-1, ..., lambda[i+L]-1, j.
    fn remove_rim_hooks(lambda: &Partition, e: u32) -> Vec<Partition> {
        let rows = lambda.parts();
        let cols = lambda.conjugate();
        let mut out = Vec::new();
        for i in 0..rows.len() {
            for j in 0..rows[i] as usize {
                let arm = rows[i] as usize - j - 1;
                let leg = cols.parts()[j] as usize - i - 1;
                if (arm + leg + 1) as u32 != e {
                    continue;
                }
                let mut mu = rows.to_vec();
                for r in i..i + leg {
                    mu[r] = rows[r + 1] - 1;
                }
                mu[i + leg] = j as u32;
                out.push(Partition::from_unsorted(mu));
            }
        }
        out
    }

    fn oracle_core(lambda: &Partition, e: u32) -> Partition {
        let mut cur = lambda.clone();
        while let Some(next) = remove_rim_hooks(&cur, e).into_iter().next() {
            cur = next;
        }
        cur
    }

    fn oracle_core_last(lambda: &Partition, e: u32) -> Partition {
        let mut cur = lambda.clone();
        while let Some(next) = remove_rim_hooks(&cur, e).pop() {
            cur = next;
        }
        cur
    }

    #[test]
    fn spec_examples() {
        assert_eq!(e_core(&p(&[4, 2]), 3), p(&[4, 2]));
        assert_eq!(e_core(&Partition::empty(), 4), Partition::empty());
        assert_eq!(e_core(&p(&[2, 1, 1]), 2), Partition::empty());
        assert_eq!(e_quotient(&Partition::empty(), 3), vec![Partition::empty(); 3]);
        assert_eq!(e_quotient(&p(&[3]), 2), vec![p(&[1]), Partition::empty()]);
        assert_eq!(e_quotient(&p(&[1, 1, 1]), 2), vec![Partition::empty(), p(&[1])]);
        assert_eq!(compose(&p(&[1]), &[p(&[1]), Partition::empty()], 2).unwrap(), p(&[3]));
        assert_eq!(compose(&Partition::empty(), &[p(&[1]), Partition::empty()], 2).unwrap(), p(&[1, 1]));
        assert_eq!(compose(&Partition::empty(), &[Partition::empty(), p(&[1])], 2).unwrap(), p(&[2]));
        let k = p(&[4, 2]);
        assert_eq!(compose(&k, &vec![Partition::empty(); 3], 3).unwrap(), k);
    }

    #[test]
    fn hook_multiset_of_42() {
        let mut hooks = Vec::new();
        let lam = p(&[4, 2]);
        let cols = lam.conjugate();
        for (i, &r) in lam.parts().iter().enumerate() {
            for j in 0..r as usize {
                hooks.push(r as usize - j + cols.parts()[j] as usize - i - 1);
            }
        }
        hooks.sort();
        assert_eq!(hooks, vec![1, 1, 2, 2, 4, 5]);
    }

    #[test]
    fn e_one_is_degenerate_but_accepted() {
        let lam = p(&[3, 1]);
        assert_eq!(e_core(&lam, 1), Partition::empty());
        assert_eq!(e_quotient(&lam, 1), vec![lam.clone()]);
        assert_eq!(compose(&Partition::empty(), &[lam.clone()], 1).unwrap(), lam);
    }

    #[test]
    fn compose_rejects_non_core() {
        assert!(matches!(compose(&p(&[2]), &[Partition::empty(), Partition::empty()], 2), Err(Error::NotACore(..))));
        assert!(matches!(enumerate_with_core(&p(&[3]), 3, 1), Err(Error::NotACore(..))));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_partitions(0), vec![Partition::empty()]);
        assert_eq!(enumerate_partitions(4).len(), 5);
        assert_eq!(enumerate_partitions(10).len(), 42);
        for n in 0..=25 {
            assert_eq!(enumerate_partitions(n).len() as u64, partition_count(n));
        }
        assert_eq!(partition_count(100), 190_569_292);
        let four = enumerate_partitions(4);
        assert!(four.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn with_core_examples() {
        assert_eq!(enumerate_with_core(&Partition::empty(), 2, 1).unwrap(), vec![p(&[1, 1]), p(&[2])]);
        assert_eq!(enumerate_with_core(&p(&[2, 1]), 2, 0).unwrap(), vec![p(&[2, 1])]);
        assert_eq!(enumerate_with_core(&Partition::empty(), 2, 2).unwrap().len(), 5);
    }

    #[test]
    fn abacus_core_matches_hook_removal() {
        for n in 0..=14 {
            for lam in enumerate_partitions(n) {
                for e in 1..=5 {
                    let c = e_core(&lam, e);
                    assert_eq!(c, oracle_core(&lam, e), "{lam} e={e}");
                    assert_eq!(c, oracle_core_last(&lam, e), "{lam} e={e}");
                }
            }
        }
    }

    #[test]
    fn count_identity_against_oracle() {
        for e in 1..=4u32 {
            for total in 0..=12u32 {
                let mut by_core = std::collections::BTreeMap::<Partition, u64>::new();
                for lam in enumerate_partitions(total) {
                    *by_core.entry(oracle_core(&lam, e)).or_default() += 1;
                }
                for (core, count) in by_core {
                    let w = (total - core.size()) / e;
                    assert_eq!(multipartition_count(e as usize, w), count);
                    assert_eq!(enumerate_with_core(&core, e, w).unwrap().len() as u64, count);
                }
            }
        }
    }

    #[test]
    fn multipartition_enumeration_matches_count() {
        for b in 0..=5 {
            for w in 0..=6 {
                let all = multipartitions(b, w);
                assert_eq!(all.len() as u64, multipartition_count(b, w), "b={b} w={w}");
                assert!(all.windows(2).all(|x| x[0] < x[1]));
            }
        }
    }

    #[test]
    fn tower_round_trip_and_weight() {
        for ell in [2u32, 3, 5] {
            for n in 0..=15 {
                for lam in enumerate_partitions(n) {
                    let t = core_tower(&lam, ell);
                    let weighted: u32 = t
                        .iter()
                        .enumerate()
                        .map(|(d, lvl)| ell.pow(d as u32) * lvl.iter().map(Partition::size).sum::<u32>())
                        .sum();
                    assert_eq!(weighted, n);
                    assert!(t.iter().flatten().all(|c| is_e_core(c, ell)));
                    assert_eq!(from_core_tower(&t, ell).unwrap(), lam);
                }
            }
        }
    }

    #[test]
    fn text_form() {
        assert_eq!(p(&[4, 2]).to_string(), "[4,2]");
        assert_eq!(Partition::empty().to_string(), "[]");
        assert_eq!("[4, 2]".parse::<Partition>().unwrap(), p(&[4, 2]));
        assert_eq!("[]".parse::<Partition>().unwrap(), Partition::empty());
        assert!("[1,2]".parse::<Partition>().is_err());
        assert_eq!(serde_json::to_string(&p(&[3, 1])).unwrap(), "[3,1]");
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    fn arb_partition() -> impl Strategy<Value = Partition> {
        proptest::collection::vec(1u32..8, 0..8).prop_map(Partition::from_unsorted)
    }

    proptest! {
        #[test]
        fn bead_count_does_not_change_core(lam in arb_partition(), e in 1u32..6, extra in 0usize..3) {
            let n = abacus_beads(lam.len(), e) + extra * e as usize;
            prop_assert_eq!(lam.beta_set(n).push_up(e).partition(), e_core(&lam, e));
            let m = lam.len() + extra;
            prop_assert_eq!(lam.beta_set(m).push_up(e).partition(), e_core(&lam, e));
        }

        #[test]
        fn round_trip(lam in arb_partition(), e in 1u32..6) {
            let core = e_core(&lam, e);
            let quo = e_quotient(&lam, e);
            let w: u32 = quo.iter().map(Partition::size).sum();
            prop_assert_eq!(lam.size(), core.size() + e * w);
            prop_assert_eq!(compose(&core, &quo, e).unwrap(), lam);
        }

        #[test]
        fn conjugate_is_involutive(lam in arb_partition()) {
            prop_assert_eq!(lam.conjugate().conjugate(), lam);
        }
    }
}
