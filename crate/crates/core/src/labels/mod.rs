//! Block, Brauer-character and weight labels.
//!
//! A label lives in a [`Setting`]: the group (CSp at odd q, Sp at even q),
//! the class catalog and the list of semisimple labels. Labels refer to
//! semisimple labels and classes by index into those lists, and carry their
//! per-class data aligned with `s.assignments`.
//!
//! In the CSp case every label also carries the center index `i`, ranging
//! over `(q-1)_ℓ'` values when `m_{X+1}(s) = 0` and over half as many
//! otherwise.

mod actions;
mod weights;

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::ell_prime_part;
use crate::error::{Error, Result};
use crate::partitions::{e_core, Partition};
use crate::ssclasses::{enumerate_ss_labels, unipotent_label_domain, Catalog, LabelDomain, SemisimpleLabel, Unipotent};
use crate::symbols::{symbol_core, Mode, Symbol};

pub use weights::{k_to_q, q_to_k, KAssignment, Paired, QTuple, WeightLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    /// Conformal symplectic group, q odd.
    Csp,
    /// Symplectic group, q even.
    Sp,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::Csp => "csp",
            GroupKind::Sp => "sp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    I,
    II,
    III,
    IV,
    V,
    VI,
    #[serde(rename = "plain")]
    Plain,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CaseTag::I => "I",
            CaseTag::II => "II",
            CaseTag::III => "III",
            CaseTag::IV => "IV",
            CaseTag::V => "V",
            CaseTag::VI => "VI",
            CaseTag::Plain => "plain",
        };
        f.write_str(s)
    }
}

/// Which copies of a degenerate core at X+1 the block contains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KappaSet {
    /// Nothing to choose: not degenerate, or no X+1 component.
    Single,
    /// Case III: `{κ}` (0) or `{κ′}` (1).
    Copy(u8),
    /// Case VI: `{κ, κ′}`.
    Both,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Core {
    Partition(Partition),
    Symbol(Symbol),
}

impl Core {
    pub fn to_json(&self) -> Value {
        match self {
            Core::Partition(p) => json!(p),
            Core::Symbol(s) => json!(s),
        }
    }
}

impl fmt::Display for Core {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Core::Partition(p) => write!(f, "{p}"),
            Core::Symbol(s) => write!(f, "{s}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockLabel {
    pub ss: usize,
    pub center: u32,
    pub cores: Vec<Core>,
    pub kappa: KappaSet,
    pub case: CaseTag,
    pub weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IBrLabel {
    pub ss: usize,
    pub center: u32,
    pub lambda: Vec<Unipotent>,
}

/// Everything needed to build and act on labels for one `(group, n, q, ℓ)`.
#[derive(Debug)]
pub struct Setting {
    pub group: GroupKind,
    pub catalog: Catalog,
    pub ss: Vec<SemisimpleLabel>,
    ss_index: HashMap<SemisimpleLabel, usize>,
    /// `(q-1)_ℓ'` for CSp, 1 for Sp.
    pub center_order: u32,
}

impl Setting {
    pub fn new(group: GroupKind, n: u32, q: u64, ell: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadRank(n));
        }
        match (group, q % 2) {
            (GroupKind::Csp, 0) => return Err(Error::Regime(format!("CSp needs odd q, got q = {q}"))),
            (GroupKind::Sp, 1) => return Err(Error::Regime(format!("Sp is only verified for even q, got q = {q}"))),
            _ => {}
        }
        let catalog = Catalog::new(n, q, ell)?;
        let ss = enumerate_ss_labels(&catalog);
        let ss_index = ss.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let center_order = match group {
            GroupKind::Csp => ell_prime_part(q - 1, ell) as u32,
            GroupKind::Sp => 1,
        };
        Ok(Self { group, catalog, ss, ss_index, center_order })
    }

    pub fn n(&self) -> u32 {
        self.catalog.n
    }

    pub fn q(&self) -> u64 {
        self.catalog.params.q
    }

    pub fn ell(&self) -> u64 {
        self.catalog.params.ell
    }

    /// Hook mode for linear ℓ, cohook mode for unitary ℓ.
    pub fn mode(&self) -> Mode {
        if self.catalog.params.linear {
            Mode::Hook
        } else {
            Mode::Cohook
        }
    }

    pub fn ss_index(&self, s: &SemisimpleLabel) -> Option<usize> {
        self.ss_index.get(s).copied()
    }

    fn has_x_plus_one(&self, s: &SemisimpleLabel) -> bool {
        self.catalog.x_plus_one().is_some_and(|i| s.m(i) > 0)
    }

    /// Number of center indices for `s`.
    pub fn center_range(&self, s: &SemisimpleLabel) -> u32 {
        match self.group {
            GroupKind::Sp => 1,
            GroupKind::Csp if self.has_x_plus_one(s) => self.center_order / 2,
            GroupKind::Csp => self.center_order,
        }
    }

    pub fn domains(&self, ss: usize) -> Vec<LabelDomain> {
        let s = &self.ss[ss];
        s.assignments
            .iter()
            .map(|&(i, _)| unipotent_label_domain(&self.catalog, s, i).expect("assigned classes have m > 0"))
            .collect()
    }

    /// β_Γ e_Γ for each component of `s`.
    pub fn slot_counts(&self, ss: usize) -> Vec<usize> {
        self.ss[ss]
            .assignments
            .iter()
            .map(|&(i, _)| {
                let c = self.catalog.class(i);
                (c.beta() * c.e_gamma) as usize
            })
            .collect()
    }

    /// Position of X+1 within `s.assignments`.
    pub fn x_plus_one_slot(&self, ss: usize) -> Option<usize> {
        let xp = self.catalog.x_plus_one()?;
        self.ss[ss].assignments.iter().position(|&(i, _)| i == xp)
    }

    /// The unipotent labels of `s` at one center index, in canonical order.
    pub fn ibr_labels_of(&self, ss: usize, center: u32) -> Vec<IBrLabel> {
        let per: Vec<Vec<Unipotent>> = self.domains(ss).iter().map(LabelDomain::labels).collect();
        let mut out = vec![Vec::new()];
        for options in &per {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Unipotent>| {
                    options.iter().map(move |u| {
                        let mut v = prefix.clone();
                        v.push(u.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|lambda| IBrLabel { ss, center, lambda }).collect()
    }

    /// Every `(s, i, λ)`.
    pub fn all_ibr_labels(&self) -> Vec<IBrLabel> {
        (0..self.ss.len())
            .into_par_iter()
            .flat_map_iter(|ss| (0..self.center_range(&self.ss[ss])).flat_map(move |c| self.ibr_labels_of(ss, c)))
            .collect()
    }

    /// Total number of `(s, i, λ)` from closed counting formulas.
    pub fn total_label_count(&self) -> u64 {
        (0..self.ss.len())
            .map(|ss| {
                let per: u64 = self.domains(ss).iter().map(LabelDomain::count).product();
                self.center_range(&self.ss[ss]) as u64 * per
            })
            .sum()
    }

    pub fn block_of(&self, x: &IBrLabel) -> Result<BlockLabel> {
        let s = self.ss.get(x.ss).ok_or_else(|| Error::OutsideDomain(format!("no semisimple label {}", x.ss)))?;
        if x.lambda.len() != s.assignments.len() || x.center >= self.center_range(s) {
            return Err(Error::OutsideDomain("label does not match its semisimple class".into()));
        }
        let mode = self.mode();
        let mut cores = Vec::with_capacity(x.lambda.len());
        let mut weights = Vec::with_capacity(x.lambda.len());
        for (slot, (&(idx, m), lam)) in s.assignments.iter().zip(&x.lambda).enumerate() {
            let class = self.catalog.class(idx);
            let domain = unipotent_label_domain(&self.catalog, s, idx)?;
            match (lam, domain) {
                (Unipotent::Partition(p), LabelDomain::Partitions { size }) if p.size() == size => {
                    let core = e_core(p, class.e_gamma);
                    weights.push((m - core.size()) / class.e_gamma);
                    cores.push(Core::Partition(core));
                }
                (Unipotent::Symbol(sym, copy), LabelDomain::Symbols { rank, parity, doubled })
                    if sym.rank() == rank
                        && crate::symbols::Parity::of(sym.defect()) == parity
                        && copy.is_some() == (doubled && sym.is_degenerate() && *sym != Symbol::empty()) =>
                {
                    let core = symbol_core(sym, class.e_gamma, mode);
                    weights.push((rank - core.rank()) / class.e_gamma);
                    cores.push(Core::Symbol(core));
                }
                _ => return Err(Error::OutsideDomain(format!("{lam} at component {slot}"))),
            }
        }
        let (case, kappa) = match self.group {
            GroupKind::Sp => (CaseTag::Plain, KappaSet::Single),
            GroupKind::Csp => match self.x_plus_one_slot(x.ss) {
                None => (CaseTag::I, KappaSet::Single),
                Some(slot) => {
                    let Core::Symbol(k) = &cores[slot] else { unreachable!("X+1 carries a symbol") };
                    let w = weights[slot];
                    if *k == Symbol::empty() {
                        (CaseTag::IV, KappaSet::Single)
                    } else if !k.is_degenerate() {
                        (if w == 0 { CaseTag::II } else { CaseTag::V }, KappaSet::Single)
                    } else if w == 0 {
                        let Unipotent::Symbol(_, Some(c)) = &x.lambda[slot] else {
                            unreachable!("a degenerate X+1 label carries a copy")
                        };
                        (CaseTag::III, KappaSet::Copy(*c))
                    } else {
                        (CaseTag::VI, KappaSet::Both)
                    }
                }
            },
        };
        Ok(BlockLabel { ss: x.ss, center: x.center, cores, kappa, case, weights })
    }

    /// All blocks with their Brauer labels, in canonical block order.
    pub fn blocks_with_labels(&self) -> Vec<(BlockLabel, Vec<IBrLabel>)> {
        let per_ss: Vec<Vec<(BlockLabel, IBrLabel)>> = (0..self.ss.len())
            .into_par_iter()
            .map(|ss| {
                (0..self.center_range(&self.ss[ss]))
                    .flat_map(|c| self.ibr_labels_of(ss, c))
                    .map(|x| (self.block_of(&x).expect("enumerated labels lie in their domain"), x))
                    .collect()
            })
            .collect();
        let mut groups: HashMap<BlockLabel, Vec<IBrLabel>> = HashMap::new();
        for (b, x) in per_ss.into_iter().flatten() {
            groups.entry(b).or_default().push(x);
        }
        let mut out: Vec<(BlockLabel, Vec<IBrLabel>)> = groups.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        for (_, xs) in &mut out {
            xs.sort();
        }
        out
    }

    pub fn enumerate_blocks(&self) -> Vec<BlockLabel> {
        self.blocks_with_labels().into_iter().map(|(b, _)| b).collect()
    }

    /// The Brauer labels of one block, found by filtering its semisimple
    /// class.
    pub fn ibr_labels(&self, block: &BlockLabel) -> Vec<IBrLabel> {
        self.ibr_labels_of(block.ss, block.center)
            .into_iter()
            .filter(|x| self.block_of(x).as_ref() == Ok(block))
            .collect()
    }

    pub fn block_json(&self, b: &BlockLabel) -> Value {
        let kappa = match b.kappa {
            KappaSet::Single => json!("single"),
            KappaSet::Copy(c) => json!({"copy": c}),
            KappaSet::Both => json!("both"),
        };
        json!({
            "s": self.ss[b.ss].to_json(&self.catalog),
            "center": b.center,
            "cores": b.cores.iter().map(Core::to_json).collect::<Vec<_>>(),
            "kappa": kappa,
            "case": b.case,
            "weights": b.weights,
        })
    }

    pub fn ibr_json(&self, x: &IBrLabel) -> Value {
        json!({
            "s": self.ss[x.ss].to_json(&self.catalog),
            "center": x.center,
            "lambda": x.lambda.iter().map(Unipotent::to_json).collect::<Vec<_>>(),
        })
    }

    /// Sp-side blocks covered by a CSp block.
    pub fn sp_blocks(&self, block: &BlockLabel) -> Vec<&'static str> {
        match block.case {
            CaseTag::II | CaseTag::V => vec!["B(s,kappa,0)", "B(s,kappa,1)"],
            CaseTag::Plain => vec![],
            _ => vec!["B(s,kappa)"],
        }
    }
}
