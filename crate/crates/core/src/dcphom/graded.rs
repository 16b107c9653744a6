use rayon::prelude::*;

use super::table_len;
use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::forest::{doubled_forest_cohomology, ForestIndex};
use crate::linalg::{HomologyGroup, Subspace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedEntry {
    pub subspace: Subspace,
    pub lattice_index: usize,
    /// One group per degree `0..table_len`.
    pub groups: Vec<HomologyGroup>,
}

/// Per-`A` groups plus their degreewise direct sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTable {
    pub entries: Vec<GradedEntry>,
    pub total: Vec<HomologyGroup>,
}

impl GradedTable {
    pub(crate) fn from_entries(entries: Vec<GradedEntry>, len: usize) -> GradedTable {
        let mut total = vec![HomologyGroup::zero(); len];
        for e in &entries {
            for (k, g) in e.groups.iter().enumerate() {
                total[k] = total[k].plus(g);
            }
        }
        GradedTable { entries, total }
    }

    pub fn entry(&self, s: &Subspace) -> Option<&GradedEntry> {
        self.entries.iter().find(|e| e.subspace == *s)
    }
}

pub(crate) fn place(
    groups: Vec<HomologyGroup>,
    len: usize,
    what: &str,
) -> Result<Vec<HomologyGroup>> {
    let mut out = vec![HomologyGroup::zero(); len];
    for (k, g) in groups.into_iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        if k >= len {
            return Err(Error::Consistency(format!(
                "{what} has a class in degree {k}, above the model's dimension {}",
                len - 1
            )));
        }
        out[k] = g;
    }
    Ok(out)
}

/// The table `2H_*(Ȳ_𝒢)[A]`: zero off `Π^(2)`, and on `Π^(2)` the doubled
/// forest cohomology multiplied by 2, which equals the undoubled one.
pub fn graded_homology(bs: &BuildingSet) -> Result<GradedTable> {
    graded_homology_with(&ForestIndex::new(bs, 2)?)
}

pub fn graded_homology_with(index: &ForestIndex) -> Result<GradedTable> {
    if index.m() != 2 {
        return Err(Error::input(
            "the 2H table needs the 2-divisible forest index",
        ));
    }
    let bs = index.building_set();
    let len = table_len(bs);
    let lattice = bs.lattice();
    let entries = (0..lattice.len())
        .into_par_iter()
        .map(|a| {
            let groups = if index.forests(a).is_empty() {
                vec![HomologyGroup::zero(); len]
            } else {
                let raw = doubled_forest_cohomology(index, a)?;
                place(raw.iter().map(HomologyGroup::doubled).collect(), len, "2H")?
            };
            Ok(GradedEntry {
                subspace: lattice.element(a).clone(),
                lattice_index: a,
                groups,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedTable::from_entries(entries, len))
}
