//! The action of the center `Z(G̃*)_ℓ'` and of field automorphisms on
//! block, Brauer and weight labels.
//!
//! Center: `z̃₀` advances the index `i`. When `m_{X+1} > 0` the index runs
//! over `N/2` values (`N = (q-1)_ℓ'`) and wrapping around flips the copy of a
//! degenerate X+1 datum. Equivalently, doubled data live on `j = i + c·N/2`
//! in `Z/N` and `z̃₀` acts as `j ↦ j + 1`.
//!
//! Field: `σ = Frob^k` moves classes by raising coefficients to `p^k`,
//! carries per-class data along and sends `z̃₀^j` to `z̃₀^(j·p^k)`.

use std::collections::HashMap;

use super::{BlockLabel, GroupKind, IBrLabel, KappaSet, Paired, Setting, WeightLabel};
use crate::arith::pow_mod;
use crate::error::{Error, Result};
use crate::ssclasses::{SemisimpleLabel, Unipotent};

impl Setting {
    fn require_csp(&self) -> Result<()> {
        match self.group {
            GroupKind::Csp => Ok(()),
            GroupKind::Sp => Err(Error::Regime("the center action needs the conformal group".into())),
        }
    }

    /// `(i + 1, wrapped?)`.
    fn step(&self, ss: usize, center: u32) -> (u32, bool) {
        let r = self.center_range(&self.ss[ss]);
        if center + 1 == r {
            (0, true)
        } else {
            (center + 1, false)
        }
    }

    pub fn act_center_ibr(&self, x: &IBrLabel) -> Result<IBrLabel> {
        self.require_csp()?;
        let (center, wrapped) = self.step(x.ss, x.center);
        let mut lambda = x.lambda.clone();
        if wrapped {
            if let Some(slot) = self.x_plus_one_slot(x.ss) {
                if let Unipotent::Symbol(_, Some(c)) = &mut lambda[slot] {
                    *c = 1 - *c;
                }
            }
        }
        Ok(IBrLabel { ss: x.ss, center, lambda })
    }

    pub fn act_center_block(&self, b: &BlockLabel) -> Result<BlockLabel> {
        self.require_csp()?;
        let (center, wrapped) = self.step(b.ss, b.center);
        let kappa = match b.kappa {
            KappaSet::Copy(c) if wrapped => KappaSet::Copy(1 - c),
            k => k,
        };
        Ok(BlockLabel { center, kappa, ..b.clone() })
    }

    pub fn act_center_weight<T: Clone>(&self, w: &WeightLabel<T>) -> Result<WeightLabel<T>> {
        let block = self.act_center_block(&w.block)?;
        let wrapped = block.center == 0;
        let data = match &w.data {
            Paired::Fixed(t, j) if wrapped => Paired::Fixed(t.clone(), 1 - j),
            d => d.clone(),
        };
        Ok(WeightLabel { block, data })
    }

    /// Image of every catalog class under `Frob^k`.
    pub fn field_class_map(&self, k: u32) -> Vec<usize> {
        let field = &self.catalog.field;
        let owner: HashMap<_, usize> = self
            .catalog
            .classes
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.members().into_iter().map(move |f| (f.clone(), i)))
            .collect();
        self.catalog.classes.iter().map(|c| owner[&c.delta.frobenius(k, field)]).collect()
    }

    /// The image semisimple label and, for each of its slots, the slot of
    /// `ss` it came from.
    fn transport(&self, ss: usize, map: &[usize]) -> (usize, Vec<usize>) {
        let s = &self.ss[ss];
        let mut moved: Vec<(usize, u32, usize)> =
            s.assignments.iter().enumerate().map(|(slot, &(i, m))| (map[i], m, slot)).collect();
        moved.sort();
        let image =
            SemisimpleLabel { regime: s.regime, n: s.n, assignments: moved.iter().map(|&(i, m, _)| (i, m)).collect() };
        let idx = self.ss_index(&image).expect("the class list is Frobenius-stable");
        (idx, moved.into_iter().map(|(_, _, slot)| slot).collect())
    }

    /// `z̃₀^i` (with copy `c` for doubled data) under `Frob^k`.
    fn field_center(&self, ss: usize, center: u32, copy: Option<u8>, k: u32) -> (u32, Option<u8>) {
        if self.group == GroupKind::Sp {
            return (center, copy);
        }
        let n = self.center_order;
        let pk = pow_mod(self.catalog.field.p() as u64, k as u64, n as u64) as u32;
        let r = self.center_range(&self.ss[ss]);
        match copy {
            Some(c) => {
                let j = (center + c as u32 * r) as u64 * pk as u64 % n as u64;
                ((j % r as u64) as u32, Some((j / r as u64) as u8))
            }
            None => ((center as u64 * pk as u64 % r as u64) as u32, None),
        }
    }

    pub fn act_field_ibr(&self, x: &IBrLabel, k: u32) -> IBrLabel {
        let (ss, from) = self.transport(x.ss, &self.field_class_map(k));
        let mut lambda: Vec<Unipotent> = from.iter().map(|&slot| x.lambda[slot].clone()).collect();
        let copy = self.x_plus_one_slot(ss).and_then(|slot| match &lambda[slot] {
            Unipotent::Symbol(_, c) => *c,
            Unipotent::Partition(_) => None,
        });
        let (center, copy) = self.field_center(ss, x.center, copy, k);
        if let (Some(c), Some(slot)) = (copy, self.x_plus_one_slot(ss)) {
            if let Unipotent::Symbol(_, old) = &mut lambda[slot] {
                *old = Some(c);
            }
        }
        IBrLabel { ss, center, lambda }
    }

    pub fn act_field_block(&self, b: &BlockLabel, k: u32) -> BlockLabel {
        let (ss, from) = self.transport(b.ss, &self.field_class_map(k));
        let copy = match b.kappa {
            KappaSet::Copy(c) => Some(c),
            _ => None,
        };
        let (center, copy) = self.field_center(ss, b.center, copy, k);
        BlockLabel {
            ss,
            center,
            cores: from.iter().map(|&slot| b.cores[slot].clone()).collect(),
            kappa: copy.map_or(b.kappa, KappaSet::Copy),
            case: b.case,
            weights: from.iter().map(|&slot| b.weights[slot]).collect(),
        }
    }

    /// Field action on weight labels whose data are per-component vectors
    /// (Q-tuples or K-assignments).
    pub fn act_field_weight<C: Clone + Ord>(&self, w: &WeightLabel<Vec<C>>, k: u32) -> WeightLabel<Vec<C>> {
        let (_, from) = self.transport(w.block.ss, &self.field_class_map(k));
        let block = self.act_field_block(&w.block, k);
        let move_data = |t: &Vec<C>| from.iter().map(|&slot| t[slot].clone()).collect::<Vec<C>>();
        let data = match &w.data {
            Paired::Plain(t) => Paired::Plain(move_data(t)),
            Paired::Pair(a, b) => {
                let (a, b) = (move_data(a), move_data(b));
                if a < b {
                    Paired::Pair(a, b)
                } else {
                    Paired::Pair(b, a)
                }
            }
            Paired::Fixed(t, j) => {
                let (_, c) = self.field_center(block.ss, w.block.center, Some(*j), k);
                Paired::Fixed(move_data(t), c.expect("copy is carried"))
            }
        };
        WeightLabel { block, data }
    }
}
