//! Lusztig symbols with hook and cohook cores and quotients.
//!
//! A symbol is an unordered pair of strictly increasing rows, up to the
//! shift `(S, T) ~ ({0} ∪ (S+1), {0} ∪ (T+1))`. Values are stored reduced,
//! with the lexicographically smaller row first.
//!
//! Cores and quotients are read from the representative shifted by the
//! least `k >= 0` for which the total number of entries is 0 or 1 mod `2e`.
//! In hook mode each row is an abacus of its own. In cohook mode the beads
//! of residue `i` form two chains: chain A takes row X at even levels and
//! row Y at odd levels, chain B the other way round. A cohook moves a bead
//! one level down its chain, so the quotient is the pair of e-tuples read
//! from the A and B chains.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{multipartitions, BetaSet, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Hook,
    Cohook,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(d: u32) -> Self {
        if d % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Vec<u32>; 2]", into = "[Vec<u32>; 2]")]
pub struct Symbol {
    a: Vec<u32>,
    b: Vec<u32>,
}

fn strictly_increasing(v: &[u32]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn shift_row(v: &[u32], k: u32) -> Vec<u32> {
    (0..k).chain(v.iter().map(|x| x + k)).collect()
}

impl Symbol {
    pub fn new(a: Vec<u32>, b: Vec<u32>) -> Result<Self> {
        if !strictly_increasing(&a) || !strictly_increasing(&b) {
            return Err(Error::InvalidSymbol(format!("rows {a:?}, {b:?} must be strictly increasing")));
        }
        Ok(Self::reduce(a, b))
    }

    fn reduce(mut a: Vec<u32>, mut b: Vec<u32>) -> Self {
        let strip = (0..a.len().min(b.len())).take_while(|&i| a[i] == i as u32 && b[i] == i as u32).count();
        if strip > 0 {
            a = a[strip..].iter().map(|x| x - strip as u32).collect();
            b = b[strip..].iter().map(|x| x - strip as u32).collect();
        }
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        Self { a, b }
    }

    pub fn empty() -> Self {
        Self { a: Vec::new(), b: Vec::new() }
    }

    pub fn rows(&self) -> (&[u32], &[u32]) {
        (&self.a, &self.b)
    }

    /// The representative with `k` extra zeros in each row.
    pub fn shifted(&self, k: u32) -> (Vec<u32>, Vec<u32>) {
        (shift_row(&self.a, k), shift_row(&self.b, k))
    }

    pub fn rank(&self) -> u32 {
        rank_of(&self.a, &self.b)
    }

    pub fn defect(&self) -> u32 {
        self.a.len().abs_diff(self.b.len()) as u32
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    fn normalized(&self, e: u32) -> (Vec<u32>, Vec<u32>) {
        let total = (self.a.len() + self.b.len()) as u32;
        let k = (0..e).find(|k| (total + 2 * k) % (2 * e) <= 1).expect("a shift always exists");
        self.shifted(k)
    }
}

fn rank_of(a: &[u32], b: &[u32]) -> u32 {
    let s: i64 = a.iter().chain(b).map(|&x| x as i64).sum();
    let t = (a.len() + b.len()) as i64 - 1;
    (s - t * t / 4) as u32
}

impl TryFrom<[Vec<u32>; 2]> for Symbol {
    type Error = Error;
    fn try_from([a, b]: [Vec<u32>; 2]) -> Result<Self> {
        Self::new(a, b)
    }
}

impl From<Symbol> for [Vec<u32>; 2] {
    fn from(s: Symbol) -> Self {
        [s.a, s.b]
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        crate::partitions::write_list(f, &self.a)?;
        f.write_str(",")?;
        crate::partitions::write_list(f, &self.b)?;
        f.write_str("]")
    }
}

impl FromStr for Symbol {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let [a, b]: [Vec<u32>; 2] = serde_json::from_str(s).map_err(|e| Error::InvalidSymbol(format!("{s:?}: {e}")))?;
        Self::new(a, b)
    }
}

/// An unordered pair of e-tuples, stored with the smaller tuple first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymbolQuotient {
    first: Vec<Partition>,
    second: Vec<Partition>,
}

impl SymbolQuotient {
    pub fn new(x: Vec<Partition>, y: Vec<Partition>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::QuotientLength { expected: x.len(), found: y.len() });
        }
        Ok(if x <= y { Self { first: x, second: y } } else { Self { first: y, second: x } })
    }

    /// Splits an ordered quotient of length `2e` into its two halves.
    pub fn from_ordered(q: &[Partition]) -> Result<Self> {
        if q.len() % 2 != 0 {
            return Err(Error::QuotientLength { expected: q.len() + 1, found: q.len() });
        }
        let e = q.len() / 2;
        Self::new(q[..e].to_vec(), q[e..].to_vec())
    }

    pub fn e(&self) -> usize {
        self.first.len()
    }

    pub fn halves(&self) -> (&[Partition], &[Partition]) {
        (&self.first, &self.second)
    }

    pub fn is_degenerate(&self) -> bool {
        self.first == self.second
    }

    pub fn weight(&self) -> u32 {
        self.first.iter().chain(&self.second).map(Partition::size).sum()
    }

    /// One ordered quotient when degenerate, otherwise two with the
    /// lexicographically smaller half leading in the first.
    pub fn ordered_quotients(&self) -> Vec<Vec<Partition>> {
        let forward: Vec<Partition> = self.first.iter().chain(&self.second).cloned().collect();
        if self.is_degenerate() {
            vec![forward]
        } else {
            let backward = self.second.iter().chain(&self.first).cloned().collect();
            vec![forward, backward]
        }
    }
}

/// Swaps the two halves of an ordered quotient.
pub fn swap_halves(q: &[Partition]) -> Vec<Partition> {
    let e = q.len() / 2;
    q[e..].iter().chain(&q[..e]).cloned().collect()
}

fn chains(x: &[u32], y: &[u32], e: u32) -> (Vec<BetaSet>, Vec<BetaSet>) {
    let mut a = vec![Vec::new(); e as usize];
    let mut b = vec![Vec::new(); e as usize];
    for &v in x {
        let (i, level) = ((v % e) as usize, v / e);
        if level % 2 == 0 {
            a[i].push(level)
        } else {
            b[i].push(level)
        }
    }
    for &v in y {
        let (i, level) = ((v % e) as usize, v / e);
        if level % 2 == 1 {
            a[i].push(level)
        } else {
            b[i].push(level)
        }
    }
    let to_sets = |v: Vec<Vec<u32>>| {
        v.into_iter()
            .map(|mut c| {
                c.sort_unstable();
                BetaSet::from_sorted(c)
            })
            .collect()
    };
    (to_sets(a), to_sets(b))
}

fn unchain(a: &[BetaSet], b: &[BetaSet], e: u32) -> (Vec<u32>, Vec<u32>) {
    let (mut x, mut y) = (Vec::new(), Vec::new());
    for i in 0..e as usize {
        for &level in a[i].beads() {
            let v = i as u32 + e * level;
            if level % 2 == 0 {
                x.push(v)
            } else {
                y.push(v)
            }
        }
        for &level in b[i].beads() {
            let v = i as u32 + e * level;
            if level % 2 == 1 {
                x.push(v)
            } else {
                y.push(v)
            }
        }
    }
    x.sort_unstable();
    y.sort_unstable();
    (x, y)
}

/// The abacus of a representative: `2e` bead sets, rows X then Y in hook
/// mode, chains A then B in cohook mode.
fn abacus(x: &[u32], y: &[u32], e: u32, mode: Mode) -> Vec<BetaSet> {
    match mode {
        Mode::Hook => {
            let mut r = BetaSet::from_sorted(x.to_vec()).runners(e);
            r.extend(BetaSet::from_sorted(y.to_vec()).runners(e));
            r
        }
        Mode::Cohook => {
            let (mut a, b) = chains(x, y, e);
            a.extend(b);
            a
        }
    }
}

fn from_abacus(slots: &[BetaSet], e: u32, mode: Mode) -> Result<Symbol> {
    let (lo, hi) = slots.split_at(e as usize);
    let (x, y) = match mode {
        Mode::Hook => (BetaSet::from_runners(lo).beads().to_vec(), BetaSet::from_runners(hi).beads().to_vec()),
        Mode::Cohook => unchain(lo, hi, e),
    };
    Symbol::new(x, y)
}

fn packed(s: &BetaSet) -> BetaSet {
    BetaSet::from_sorted((0..s.count() as u32).collect())
}

pub fn symbol_core(sym: &Symbol, e: u32, mode: Mode) -> Symbol {
    assert!(e >= 1, "e must be positive");
    let (x, y) = sym.normalized(e);
    let slots: Vec<BetaSet> = abacus(&x, &y, e, mode).iter().map(packed).collect();
    from_abacus(&slots, e, mode).expect("packing keeps rows strictly increasing")
}

pub fn is_symbol_core(sym: &Symbol, e: u32, mode: Mode) -> bool {
    symbol_core(sym, e, mode) == *sym
}

pub fn symbol_quotient(sym: &Symbol, e: u32, mode: Mode) -> SymbolQuotient {
    assert!(e >= 1, "e must be positive");
    let (x, y) = sym.normalized(e);
    let parts: Vec<Partition> = abacus(&x, &y, e, mode).iter().map(BetaSet::partition).collect();
    let (p, q) = parts.split_at(e as usize);
    SymbolQuotient::new(p.to_vec(), q.to_vec()).expect("halves have equal length")
}

/// `(rank(sym) - rank(core)) / e`.
pub fn symbol_weight(sym: &Symbol, e: u32, mode: Mode) -> u32 {
    (sym.rank() - symbol_core(sym, e, mode).rank()) / e
}

/// The symbol with core `kappa` and ordered quotient `q0`, the first half
/// of `q0` going to the first row (hook) or chain A (cohook) of `kappa`'s
/// canonical representative.
pub fn compose_symbol(kappa: &Symbol, q0: &[Partition], e: u32, mode: Mode) -> Result<Symbol> {
    if e == 0 {
        return Err(Error::ZeroE);
    }
    if q0.len() != 2 * e as usize {
        return Err(Error::QuotientLength { expected: 2 * e as usize, found: q0.len() });
    }
    if !is_symbol_core(kappa, e, mode) {
        return Err(Error::NotACore(kappa.to_string(), e));
    }
    let (mut x, mut y) = kappa.normalized(e);
    let slots = loop {
        let s = abacus(&x, &y, e, mode);
        if s.iter().zip(q0).all(|(s, q)| s.count() >= q.len()) {
            break s;
        }
        x = shift_row(&x, 2 * e);
        y = shift_row(&y, 2 * e);
    };
    let filled: Vec<BetaSet> = slots.iter().zip(q0).map(|(s, q)| q.beta_set(s.count())).collect();
    from_abacus(&filled, e, mode)
}

/// The labelled copy `kappa * (Q, copy)` of a doubled degenerate symbol.
/// Both `kappa` and the quotient must be degenerate.
pub fn compose_symbol_with_copy(
    kappa: &Symbol,
    q0: &[Partition],
    copy: u8,
    e: u32,
    mode: Mode,
) -> Result<(Symbol, u8)> {
    if copy > 1 {
        return Err(Error::InvalidSymbol(format!("copy index {copy} is not 0 or 1")));
    }
    if !kappa.is_degenerate() || !SymbolQuotient::from_ordered(q0)?.is_degenerate() {
        return Err(Error::InvalidSymbol("a copy index needs degenerate core and quotient".into()));
    }
    Ok((compose_symbol(kappa, q0, e, mode)?, copy))
}

/// Ordered bipartitions `(alpha, beta)` of `n`.
fn bipartitions(n: u32) -> Vec<(Partition, Partition)> {
    multipartitions(2, n)
        .into_iter()
        .map(|mut v| {
            let b = v.pop().unwrap();
            (v.pop().unwrap(), b)
        })
        .collect()
}

/// All reduced symbols of the given rank with defect of the given parity,
/// sorted; degenerate symbols appear once.
pub fn enumerate_symbols(rank: u32, parity: Parity) -> Vec<Symbol> {
    let mut out = Vec::new();
    let start = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    for d in (start..).step_by(2) {
        let base = d * d / 4;
        if base > rank {
            break;
        }
        for (alpha, beta) in bipartitions(rank - base) {
            if d == 0 && alpha > beta {
                continue;
            }
            let k = beta.len().max(alpha.len().saturating_sub(d as usize));
            let x = alpha.beta_set(k + d as usize).beads().to_vec();
            let y = beta.beta_set(k).beads().to_vec();
            out.push(Symbol::new(x, y).expect("β-sets are strictly increasing"));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn sym(a: &[u32], b: &[u32]) -> Symbol {
        Symbol::new(a.to_vec(), b.to_vec()).unwrap()
    }

    fn subsets(bound: u32) -> Vec<Vec<u32>> {
        (0u32..1 << (bound + 1)).map(|m| (0..=bound).filter(|i| m >> i & 1 == 1).collect()).collect()
    }

    fn brute_symbols(rank: u32) -> BTreeSet<Symbol> {
        let dmax = (0..).take_while(|d| d * d / 4 <= rank).last().unwrap();
        let subs = subsets(rank + dmax);
        let mut out = BTreeSet::new();
        for x in &subs {
            for y in &subs {
                if rank_of(x, y) == rank && x.len().abs_diff(y.len()) as u32 <= dmax {
                    out.insert(Symbol::new(x.clone(), y.clone()).unwrap());
                }
            }
        }
        out
    }

    // Removes hooks (or cohooks) one at a time, first found, on a fixed
    // representative.
    fn oracle_core(s: &Symbol, e: u32, mode: Mode) -> Symbol {
        let (mut x, mut y) = s.shifted(2 * e);
        loop {
            let mut moved = false;
            'outer: for row in 0..2 {
                let (src, dst) = if row == 0 { (x.clone(), y.clone()) } else { (y.clone(), x.clone()) };
                for &v in &src {
                    if v < e {
                        continue;
                    }
                    let target = if mode == Mode::Hook { &src } else { &dst };
                    if target.contains(&(v - e)) {
                        continue;
                    }
                    let mut ns = src.clone();
                    ns.retain(|&z| z != v);
                    let mut nd = dst.clone();
                    if mode == Mode::Hook {
                        ns.push(v - e);
                        ns.sort_unstable();
                    } else {
                        nd.push(v - e);
                        nd.sort_unstable();
                    }
                    if row == 0 {
                        (x, y) = (ns, nd)
                    } else {
                        (y, x) = (ns, nd)
                    }
                    moved = true;
                    break 'outer;
                }
            }
            if !moved {
                return Symbol::new(x, y).unwrap();
            }
        }
    }

    #[test]
    fn spec_examples() {
        let s = sym(&[0, 2], &[1]);
        assert_eq!((s.rank(), s.defect(), s.is_degenerate()), (2, 1, false));
        let t = sym(&[0, 1, 3], &[0, 2]);
        assert_eq!(s, t);
        assert_eq!(rank_of(&[0, 1, 3], &[0, 2]), 2);
        let e = Symbol::empty();
        assert_eq!((e.rank(), e.defect(), e.is_degenerate()), (0, 0, true));
        let d = sym(&[0, 2], &[0, 2]);
        assert_eq!((d.rank(), d.defect(), d.is_degenerate()), (2, 0, true));

        let s = sym(&[0, 3], &[1]);
        assert_eq!(symbol_core(&s, 3, Mode::Hook), s);
        assert_eq!(symbol_core(&s, 2, Mode::Hook), sym(&[0, 1], &[1]));
        assert_eq!(symbol_weight(&s, 2, Mode::Hook), 1);
        assert_eq!(symbol_quotient(&s, 2, Mode::Hook).weight(), 1);
        for mode in [Mode::Hook, Mode::Cohook] {
            for e in 1..4 {
                assert_eq!(symbol_core(&Symbol::empty(), e, mode), Symbol::empty());
                assert_eq!(symbol_quotient(&Symbol::empty(), e, mode).weight(), 0);
            }
        }
    }

    #[test]
    fn ordered_quotient_examples() {
        let one = Partition::new(vec![1]).unwrap();
        let z = Partition::empty();
        let deg = SymbolQuotient::new(vec![z.clone()], vec![z.clone()]).unwrap();
        assert_eq!(deg.ordered_quotients().len(), 1);
        let q = SymbolQuotient::new(vec![one.clone()], vec![z.clone()]).unwrap();
        assert_eq!(q.ordered_quotients(), vec![vec![z.clone(), one.clone()], vec![one.clone(), z.clone()]]);
        let d2 = SymbolQuotient::new(vec![one.clone(), z.clone()], vec![one, z]).unwrap();
        assert_eq!(d2.ordered_quotients().len(), 1);
    }

    #[test]
    fn text_form() {
        let s = sym(&[1], &[0, 2]);
        assert_eq!(s.to_string(), "[[0,2],[1]]");
        assert_eq!("[[1],[0,2]]".parse::<Symbol>().unwrap(), s);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[[0,2],[1]]");
        assert_eq!(Symbol::empty().to_string(), "[[],[]]");
        assert!("[[2,1],[]]".parse::<Symbol>().is_err());
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for rank in 0..=4 {
            let brute = brute_symbols(rank);
            for parity in [Parity::Even, Parity::Odd] {
                let want: Vec<Symbol> = brute.iter().filter(|s| Parity::of(s.defect()) == parity).cloned().collect();
                assert_eq!(enumerate_symbols(rank, parity), want, "rank {rank} {parity:?}");
            }
        }
        assert_eq!(enumerate_symbols(0, Parity::Even), vec![Symbol::empty()]);
        assert_eq!(enumerate_symbols(2, Parity::Odd).len(), 6);
    }

    #[test]
    fn cores_match_removal_oracle() {
        for rank in 0..=5 {
            for parity in [Parity::Even, Parity::Odd] {
                for s in enumerate_symbols(rank, parity) {
                    for e in 1..=3 {
                        for mode in [Mode::Hook, Mode::Cohook] {
                            let c = symbol_core(&s, e, mode);
                            assert_eq!(c, oracle_core(&s, e, mode), "{s} e={e} {mode:?}");
                            assert_eq!(s.rank(), c.rank() + e * symbol_quotient(&s, e, mode).weight());
                            if mode == Mode::Hook {
                                assert_eq!(c.defect(), s.defect());
                            } else {
                                assert_eq!(c.defect() % 2, s.defect() % 2);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn round_trip_and_reconstruction_counts() {
        for mode in [Mode::Hook, Mode::Cohook] {
            for e in 1..=3 {
                for parity in [Parity::Even, Parity::Odd] {
                    let mut groups: BTreeMap<(Symbol, SymbolQuotient), Vec<Symbol>> = BTreeMap::new();
                    for rank in 0..=5 {
                        for s in enumerate_symbols(rank, parity) {
                            let core = symbol_core(&s, e, mode);
                            let quo = symbol_quotient(&s, e, mode);
                            for q0 in quo.ordered_quotients() {
                                let back = compose_symbol(&core, &q0, e, mode).unwrap();
                                assert_eq!(symbol_core(&back, e, mode), core);
                                assert_eq!(symbol_quotient(&back, e, mode), quo);
                            }
                            groups.entry((core, quo)).or_default().push(s);
                        }
                    }
                    for ((core, quo), members) in groups {
                        let want = if !core.is_degenerate() && !quo.is_degenerate() { 2 } else { 1 };
                        assert_eq!(members.len(), want, "{core} {quo:?} {mode:?} e={e}");
                        let built: BTreeSet<Symbol> = quo
                            .ordered_quotients()
                            .iter()
                            .map(|q0| compose_symbol(&core, q0, e, mode).unwrap())
                            .collect();
                        assert_eq!(built, members.into_iter().collect());
                    }
                }
            }
        }
    }

    #[test]
    fn compose_rejects_non_core_and_bad_copy() {
        let z = Partition::empty();
        let s = sym(&[0, 3], &[1]);
        assert!(matches!(
            compose_symbol(&s, &[z.clone(), z.clone(), z.clone(), z.clone()], 2, Mode::Hook),
            Err(Error::NotACore(..))
        ));
        let one = Partition::new(vec![1]).unwrap();
        let d = Symbol::empty();
        let (l, c) = compose_symbol_with_copy(&d, &[one.clone(), one.clone()], 1, 1, Mode::Hook).unwrap();
        assert!(l.is_degenerate());
        assert_eq!(c, 1);
        assert!(compose_symbol_with_copy(&d, &[one, z], 0, 1, Mode::Hook).is_err());
    }

    #[test]
    fn shift_invariance() {
        for rank in 0..=4 {
            for s in enumerate_symbols(rank, Parity::Odd).into_iter().chain(enumerate_symbols(rank, Parity::Even)) {
                for k in 0..4 {
                    let (x, y) = s.shifted(k);
                    assert_eq!(rank_of(&x, &y), s.rank());
                    let t = Symbol::new(y, x).unwrap();
                    assert_eq!(t, s);
                }
            }
        }
    }
}
