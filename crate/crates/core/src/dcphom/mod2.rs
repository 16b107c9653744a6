use rayon::prelude::*;

use super::table_len;
use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::forest::{child_dim, Forest, ForestIndex};
use crate::linalg::Subspace;

/// A pair `(F, d)`; `d[i]` decorates node `forest[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForestClass {
    pub forest: Forest,
    pub d: Vec<usize>,
}

impl ForestClass {
    /// `κ = Σ d(G)`.
    pub fn kappa(&self) -> usize {
        self.d.iter().sum()
    }

    /// Number of even decorations.
    pub fn defect(&self) -> usize {
        self.d.iter().filter(|x| *x % 2 == 0).count()
    }
}

/// Exclusive upper bounds `dim G - dim child_F(G)` per node.
pub(crate) fn bounds(bs: &BuildingSet, f: &[usize]) -> Vec<usize> {
    f.iter()
        .map(|&g| bs.element(g).dim() - child_dim(bs, f, g))
        .collect()
}

/// All decorations `1 ≤ d(G) < dim G - dim child_F(G)` of `f`.
pub fn forest_classes(bs: &BuildingSet, f: &[usize]) -> Vec<ForestClass> {
    let b = bounds(bs, f);
    if b.iter().any(|&x| x < 2) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut d = vec![1; f.len()];
    loop {
        out.push(ForestClass {
            forest: f.to_vec(),
            d: d.clone(),
        });
        let mut i = 0;
        loop {
            if i == d.len() {
                return out;
            }
            d[i] += 1;
            if d[i] < b[i] {
                break;
            }
            d[i] = 1;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountEntry {
    pub subspace: Subspace,
    pub lattice_index: usize,
    pub dims: Vec<usize>,
}

/// Per-`A` F₂-dimensions plus their degreewise sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    pub entries: Vec<CountEntry>,
    pub total: Vec<usize>,
}

impl CountTable {
    pub(crate) fn from_entries(entries: Vec<CountEntry>, len: usize) -> CountTable {
        let mut total = vec![0; len];
        for e in &entries {
            for (k, n) in e.dims.iter().enumerate() {
                total[k] += n;
            }
        }
        CountTable { entries, total }
    }

    pub fn entry(&self, s: &Subspace) -> Option<&CountEntry> {
        self.entries.iter().find(|e| e.subspace == *s)
    }
}

/// Counts of the classes `μ(F,d)` by root and degree `κ`.
pub fn mod2_betti(bs: &BuildingSet) -> Result<CountTable> {
    mod2_betti_with(&ForestIndex::new(bs, 1)?)
}

pub fn mod2_betti_with(index: &ForestIndex) -> Result<CountTable> {
    if index.m() != 1 {
        return Err(Error::input("mod-2 counts need the full forest index"));
    }
    let bs = index.building_set();
    let len = table_len(bs);
    let lattice = bs.lattice();
    let entries = (0..lattice.len())
        .into_par_iter()
        .map(|a| {
            let mut dims = vec![0usize; len];
            for f in index.forests(a) {
                // generating function Π_G (x + … + x^{b_G - 1})
                let mut poly = vec![1usize];
                for b in bounds(bs, f) {
                    if b < 2 {
                        poly.clear();
                        break;
                    }
                    let mut next = vec![0; poly.len() + b - 1];
                    for (i, c) in poly.iter().enumerate() {
                        for e in 1..b {
                            next[i + e] += c;
                        }
                    }
                    poly = next;
                }
                for (k, c) in poly.into_iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    if k >= len {
                        return Err(Error::Consistency(format!(
                            "forest class in degree {k} exceeds the model's dimension"
                        )));
                    }
                    dims[k] += c;
                }
            }
            Ok(CountEntry {
                subspace: lattice.element(a).clone(),
                lattice_index: a,
                dims,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CountTable::from_entries(entries, len))
}
