//! Homology of the real wonderful model `Ȳ_𝒢(ℝ)`, graded by `ℂ_𝒢`.

pub mod bockstein;
pub mod graded;
pub mod mod2;
pub mod synthesis;

pub use bockstein::{bockstein_b2, bockstein_b2_with, BocksteinComplex};
pub use graded::{graded_homology, graded_homology_with, GradedEntry, GradedTable};
pub use mod2::{forest_classes, mod2_betti, mod2_betti_with, CountEntry, CountTable, ForestClass};
pub use synthesis::{integral_synthesis, integral_synthesis_with, synthesize_piece, FullHomology};

use crate::building::BuildingSet;

/// Number of homological degrees of `Ȳ_𝒢`: `dim rt(𝒢) - #components + 1`.
pub fn table_len(bs: &BuildingSet) -> usize {
    let root = bs.lattice().root();
    bs.root().dim() - bs.components_of(root).len() + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::closure;
    use crate::linalg::{HomologyGroup, Subspace};

    fn s(ambient: usize, rows: &[Vec<i64>]) -> Subspace {
        Subspace::from_i64_rows(ambient, rows).unwrap()
    }

    fn braid(n: usize) -> BuildingSet {
        let mut lines = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = -1;
                lines.push(s(n, &[v]));
            }
        }
        closure(n, &lines, 1000).unwrap()
    }

    fn projective(n: usize) -> BuildingSet {
        BuildingSet::with_default_guard(n + 1, vec![Subspace::full(n + 1)]).unwrap()
    }

    fn g(rank: usize, torsion: &[u64]) -> HomologyGroup {
        HomologyGroup::from_cyclic(rank, torsion)
    }

    #[test]
    fn projective_plane() {
        let bs = projective(2);
        let full = integral_synthesis(&bs).unwrap();
        assert_eq!(full.integral.total, vec![g(1, &[]), g(0, &[2]), g(0, &[])]);
        assert_eq!(full.b2.total, vec![1, 0, 0]);
        assert_eq!(full.mod2.total, vec![1, 1, 1]);
    }

    #[test]
    fn projective_three_space() {
        let bs = projective(3);
        let full = integral_synthesis(&bs).unwrap();
        assert_eq!(full.b2.total, vec![1, 0, 0, 1]);
        assert_eq!(
            full.integral.total,
            vec![g(1, &[]), g(0, &[2]), g(0, &[]), g(1, &[])]
        );
        let top = full.two_h.entry(bs.root()).unwrap();
        assert_eq!(top.groups[3], g(1, &[]));
    }

    #[test]
    fn nested_pair() {
        let plane = s(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let bs =
            BuildingSet::with_default_guard(4, vec![plane.clone(), Subspace::full(4)]).unwrap();
        let even = crate::forest::ForestIndex::new(&bs, 2).unwrap();
        let top = bs.lattice().root();
        let doubled = crate::forest::doubled_forest_cohomology(&even, top).unwrap();
        assert_eq!(doubled[2], g(0, &[2]));
        // multiplication by 2 kills the ℤ/2 in the 2H table
        let two_h = graded_homology(&bs).unwrap();
        assert!(two_h.entry(&Subspace::full(4)).unwrap().groups[2].is_zero());
        assert_eq!(two_h.entry(&plane).unwrap().groups[1], g(1, &[]));
        assert_eq!(
            two_h.entry(&Subspace::zero(4)).unwrap().groups[0],
            g(1, &[])
        );
        let full = integral_synthesis(&bs).unwrap();
        assert_eq!(
            full.integral.total,
            vec![g(1, &[]), g(1, &[2]), g(0, &[2]), g(0, &[])]
        );
    }

    #[test]
    fn torus() {
        let a = s(4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = s(4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        let bs = BuildingSet::with_default_guard(4, vec![a, b]).unwrap();
        let full = integral_synthesis(&bs).unwrap();
        assert_eq!(full.b2.total, vec![1, 2, 1]);
        assert_eq!(full.integral.total, vec![g(1, &[]), g(2, &[]), g(1, &[])]);
    }

    #[test]
    fn moduli_surface() {
        let bs = braid(4);
        let full = integral_synthesis(&bs).unwrap();
        assert_eq!(full.two_h.total, vec![g(1, &[]), g(4, &[]), g(0, &[])]);
        assert_eq!(full.mod2.total, vec![1, 5, 1]);
        assert_eq!(full.integral.total, vec![g(1, &[]), g(4, &[2]), g(0, &[])]);
    }

    #[test]
    fn circle() {
        let full = integral_synthesis(&braid(3)).unwrap();
        assert_eq!(full.integral.total, vec![g(1, &[]), g(1, &[])]);
    }

    #[test]
    fn bockstein_is_a_double_complex() {
        let bs = braid(5);
        let index = crate::forest::ForestIndex::new(&bs, 1).unwrap();
        let len = table_len(&bs);
        for a in 0..bs.lattice().len() {
            BocksteinComplex::new(&index, a, len)
                .unwrap()
                .check_double_complex()
                .unwrap();
        }
    }
}
