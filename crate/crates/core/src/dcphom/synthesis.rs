//! Reassembling `H_*(Ȳ_𝒢; ℤ)` from the 2H table, mod-2 counts and `B²`.

use super::bockstein::bockstein_b2_with;
use super::graded::{graded_homology_with, GradedEntry, GradedTable};
use super::mod2::{mod2_betti_with, CountTable};
use super::table_len;
use crate::building::BuildingSet;
use crate::error::{Error, Result};
use crate::forest::ForestIndex;
use crate::linalg::HomologyGroup;

/// Every intermediate table together with the integral result.
#[derive(Debug, Clone)]
pub struct FullHomology {
    pub two_h: GradedTable,
    pub mod2: CountTable,
    pub b2: CountTable,
    pub integral: GradedTable,
}

/// Full homology of one graded piece.
///
/// `ℤ/2^j·u` summands of 2H lift to `ℤ/2^{j+1}·u`; the number `s_k` of
/// extra `ℤ/2` summands is forced by the universal coefficient count
/// `dim H_k(F₂) = r_k + (p_k + s_k) + (p_{k-1} + s_{k-1})`.
pub fn synthesize_piece(two_h: &[HomologyGroup], mod2: &[usize]) -> Result<Vec<HomologyGroup>> {
    if two_h.len() != mod2.len() {
        return Err(Error::Consistency(
            "2H and mod-2 tables have different lengths".into(),
        ));
    }
    let mut out = Vec::with_capacity(two_h.len());
    let mut prev = 0usize;
    for (k, g) in two_h.iter().enumerate() {
        let lifted: Vec<u64> = g
            .torsion
            .iter()
            .map(|&t| if t % 2 == 0 { 2 * t } else { t })
            .collect();
        let p = g.even_torsion_count();
        let known = g.rank + p + prev;
        let s = mod2[k].checked_sub(known).ok_or_else(|| {
            Error::Consistency(format!(
                "degree {k}: mod-2 dimension {} is below the {known} forced by 2H",
                mod2[k]
            ))
        })?;
        let mut orders = lifted;
        orders.extend(std::iter::repeat_n(2, s));
        let full = HomologyGroup::from_cyclic(g.rank, &orders);
        prev = full.even_torsion_count();
        out.push(full);
    }
    if prev != 0 {
        return Err(Error::Consistency(
            "top-degree 2-torsion has no room in the mod-2 count".into(),
        ));
    }
    Ok(out)
}

/// `B²_k = r_k + p_k + p_{k-1}` with `p` counting even summands of 2H.
pub(crate) fn expected_b2(two_h: &[HomologyGroup]) -> Vec<usize> {
    let p: Vec<usize> = two_h
        .iter()
        .map(HomologyGroup::even_torsion_count)
        .collect();
    (0..two_h.len())
        .map(|k| two_h[k].rank + p[k] + if k > 0 { p[k - 1] } else { 0 })
        .collect()
}

pub fn integral_synthesis(bs: &BuildingSet) -> Result<FullHomology> {
    integral_synthesis_with(&ForestIndex::new(bs, 1)?, &ForestIndex::new(bs, 2)?)
}

/// Runs the whole pipeline and checks the `B²` and universal-coefficient
/// consistency conditions on every graded piece.
pub fn integral_synthesis_with(full: &ForestIndex, even: &ForestIndex) -> Result<FullHomology> {
    let bs = full.building_set();
    let len = table_len(bs);
    let two_h = graded_homology_with(even)?;
    let mod2 = mod2_betti_with(full)?;
    let b2 = bockstein_b2_with(full)?;
    let mut entries = Vec::with_capacity(two_h.entries.len());
    for ((h, m), b) in two_h.entries.iter().zip(&mod2.entries).zip(&b2.entries) {
        debug_assert_eq!(h.lattice_index, m.lattice_index);
        let expected = expected_b2(&h.groups);
        if expected != b.dims {
            return Err(Error::Consistency(format!(
                "B² check failed at {}: Bockstein gives {:?}, 2H predicts {:?}",
                h.subspace, b.dims, expected
            )));
        }
        entries.push(GradedEntry {
            subspace: h.subspace.clone(),
            lattice_index: h.lattice_index,
            groups: synthesize_piece(&h.groups, &m.dims)?,
        });
    }
    Ok(FullHomology {
        two_h,
        mod2,
        b2,
        integral: GradedTable::from_entries(entries, len),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(r: usize) -> HomologyGroup {
        HomologyGroup::free(r)
    }

    #[test]
    fn projective_plane_piece() {
        // [V*] piece of RP²: 2H = 0, mod-2 = (0, 1, 1)
        let out = synthesize_piece(&[z(0), z(0), z(0)], &[0, 1, 1]).unwrap();
        assert_eq!(out, vec![z(0), HomologyGroup::from_cyclic(0, &[2]), z(0)]);
    }

    #[test]
    fn negative_extra_count_is_consistency_error() {
        assert!(matches!(
            synthesize_piece(&[z(2)], &[1]),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn even_torsion_lifts() {
        let two_h = vec![HomologyGroup::from_cyclic(0, &[2]), z(0)];
        let out = synthesize_piece(&two_h, &[1, 1]).unwrap();
        assert_eq!(out[0].torsion, vec![4]);
    }
}
