//! Weight labels in Q-form (tuples of partitions) and K-form (ℓ-cores on
//! slots), and the ℓ-core tower correspondence between them.

use serde::Serialize;
use serde_json::{json, Value};

use super::{BlockLabel, CaseTag, Setting};
use crate::error::Result;
use crate::partitions::{core_tower, e_cores_of_size, from_core_tower, multipartitions, Partition};
use crate::symbols::swap_halves;

/// Per component, an ordered `β_Γ e_Γ`-tuple of partitions.
pub type QTuple = Vec<Vec<Partition>>;

/// Per component, per level δ, the ℓ-cores on the `β_Γ e_Γ ℓ^δ` slots.
pub type KAssignment = Vec<Vec<Vec<Partition>>>;

/// A weight datum, or for cases IV and VI its pairing with the primed datum.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Paired<T> {
    Plain(T),
    /// `{T, T′}` with `T < T′`.
    Pair(T, T),
    /// `(T, i)` for `T = T′`.
    Fixed(T, u8),
}

impl<T: Serialize> Paired<T> {
    /// `{"<key>": T}`, `{"<key>": [T, T′]}` or `{"<key>": T, "i": j}`.
    pub fn to_json(&self, key: &str) -> Value {
        match self {
            Paired::Plain(t) => json!({ key: t }),
            Paired::Pair(a, b) => json!({ key: [a, b] }),
            Paired::Fixed(t, j) => json!({ key: t, "i": j }),
        }
    }
}

impl<T> Paired<T> {
    pub fn representative(&self) -> &T {
        match self {
            Paired::Plain(t) | Paired::Pair(t, _) | Paired::Fixed(t, _) => t,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightLabel<T> {
    pub block: BlockLabel,
    pub data: Paired<T>,
}

/// Largest δ with `ell^δ <= w` (0 when `w = 0`).
fn depth(w: u32, ell: u32) -> usize {
    let mut d = 0;
    let mut p = ell as u64;
    while p <= w as u64 {
        d += 1;
        p *= ell as u64;
    }
    d
}

fn pair_up<T: Ord + Clone>(items: Vec<T>, prime: impl Fn(&T) -> T) -> Vec<Paired<T>> {
    let mut out = Vec::new();
    for t in items {
        let p = prime(&t);
        match t.cmp(&p) {
            std::cmp::Ordering::Less => out.push(Paired::Pair(t, p)),
            std::cmp::Ordering::Equal => {
                out.push(Paired::Fixed(t.clone(), 0));
                out.push(Paired::Fixed(t, 1));
            }
            std::cmp::Ordering::Greater => {}
        }
    }
    out.sort();
    out
}

fn is_paired_case(block: &BlockLabel) -> bool {
    matches!(block.case, CaseTag::IV | CaseTag::VI)
}

/// All ways to put ℓ-cores on `b·ℓ^δ` slots per level with
/// `Σ ℓ^δ |K| = w`, sorted.
pub fn k_component(b: usize, w: u32, ell: u32) -> Vec<Vec<Vec<Partition>>> {
    let d = depth(w, ell);
    let cores: Vec<Vec<Partition>> = (0..=w).map(|t| e_cores_of_size(ell, t)).collect();
    let slots: Vec<(usize, u32)> = (0..=d)
        .flat_map(|lvl| std::iter::repeat_n((lvl, ell.pow(lvl as u32)), b * ell.pow(lvl as u32) as usize))
        .collect();
    let mut out = Vec::new();
    fn go(
        pos: usize,
        rest: u32,
        slots: &[(usize, u32)],
        cores: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<Vec<Partition>>,
    ) {
        if pos == slots.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let scale = slots[pos].1;
        let capacity: u64 = slots[pos..].iter().map(|s| s.1 as u64).max().unwrap_or(0);
        if rest > 0 && capacity == 0 {
            return;
        }
        for t in 0..=rest / scale {
            for c in &cores[t as usize] {
                cur.push(c.clone());
                go(pos + 1, rest - t * scale, slots, cores, cur, out);
                cur.pop();
            }
        }
    }
    let mut flat = Vec::new();
    go(0, w, &slots, &cores, &mut Vec::new(), &mut flat);
    for assignment in flat {
        let mut levels = Vec::with_capacity(d + 1);
        let mut it = assignment.into_iter();
        for lvl in 0..=d {
            levels.push(it.by_ref().take(b * ell.pow(lvl as u32) as usize).collect());
        }
        out.push(levels);
    }
    out.sort();
    out
}

/// Q-form to K-form via ℓ-core towers, padded to the depth fixed by each
/// component's weight.
pub fn q_to_k(q: &QTuple, weights: &[u32], ell: u32) -> KAssignment {
    q.iter()
        .zip(weights)
        .map(|(tuple, &w)| {
            let d = depth(w, ell);
            let mut levels: Vec<Vec<Partition>> = vec![Vec::new(); d + 1];
            for p in tuple {
                let t = core_tower(p, ell);
                for (lvl, slot) in levels.iter_mut().enumerate() {
                    match t.get(lvl) {
                        Some(cores) => slot.extend(cores.iter().cloned()),
                        None => slot.extend(std::iter::repeat_n(Partition::empty(), ell.pow(lvl as u32) as usize)),
                    }
                }
            }
            levels
        })
        .collect()
}

/// Inverse of [`q_to_k`]; `slots[j]` is `β_Γ e_Γ` for component `j`.
pub fn k_to_q(k: &KAssignment, slots: &[usize], ell: u32) -> Result<QTuple> {
    k.iter()
        .zip(slots)
        .map(|(levels, &b)| {
            (0..b)
                .map(|j| {
                    let tower: Vec<Vec<Partition>> = levels
                        .iter()
                        .enumerate()
                        .map(|(lvl, cores)| {
                            let width = ell.pow(lvl as u32) as usize;
                            cores[j * width..(j + 1) * width].to_vec()
                        })
                        .collect();
                    from_core_tower(&tower, ell)
                })
                .collect()
        })
        .collect()
}

impl Setting {
    /// The Q-form data before pairing: every tuple with `Σ|Q_Γ^(i)| = w_Γ`.
    pub fn q_tuples(&self, block: &BlockLabel) -> Vec<QTuple> {
        let per: Vec<Vec<Vec<Partition>>> =
            self.slot_counts(block.ss).iter().zip(&block.weights).map(|(&b, &w)| multipartitions(b, w)).collect();
        let mut out: Vec<QTuple> = vec![Vec::new()];
        for options in &per {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// `Q′`: the X+1 component with its two halves exchanged.
    pub fn prime_q(&self, block: &BlockLabel, q: &QTuple) -> QTuple {
        let mut out = q.clone();
        if let Some(slot) = self.x_plus_one_slot(block.ss) {
            out[slot] = swap_halves(&q[slot]);
        }
        out
    }

    /// `K′`: at every level, the slots below the two halves of the X+1
    /// component exchanged.
    pub fn prime_k(&self, block: &BlockLabel, k: &KAssignment) -> KAssignment {
        let mut out = k.clone();
        if let Some(slot) = self.x_plus_one_slot(block.ss) {
            for level in &mut out[slot] {
                let half = level.len() / 2;
                level.rotate_left(half);
            }
        }
        out
    }

    pub fn weight_labels_q(&self, block: &BlockLabel) -> Vec<WeightLabel<QTuple>> {
        let tuples = self.q_tuples(block);
        let data = if is_paired_case(block) {
            pair_up(tuples, |q| self.prime_q(block, q))
        } else {
            tuples.into_iter().map(Paired::Plain).collect()
        };
        data.into_iter().map(|data| WeightLabel { block: block.clone(), data }).collect()
    }

    /// K-form data before pairing, enumerated directly from ℓ-cores.
    pub fn weight_labels_k(&self, block: &BlockLabel) -> Vec<KAssignment> {
        let ell = self.ell() as u32;
        let per: Vec<Vec<Vec<Vec<Partition>>>> =
            self.slot_counts(block.ss).iter().zip(&block.weights).map(|(&b, &w)| k_component(b, w, ell)).collect();
        let mut out: Vec<KAssignment> = vec![Vec::new()];
        for options in &per {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// K-form labels after pairing.
    pub fn weight_labels_k_paired(&self, block: &BlockLabel) -> Vec<WeightLabel<KAssignment>> {
        let ks = self.weight_labels_k(block);
        let data = if is_paired_case(block) {
            pair_up(ks, |k| self.prime_k(block, k))
        } else {
            ks.into_iter().map(Paired::Plain).collect()
        };
        data.into_iter().map(|data| WeightLabel { block: block.clone(), data }).collect()
    }
}
