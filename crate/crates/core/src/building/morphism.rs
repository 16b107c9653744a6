//! Classification of linear maps between building sets.

use serde::{Deserialize, Serialize};

use super::building_set::BuildingSet;
use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, Rational, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MapClass {
    /// `f*(G') ∈ 𝒢` for every `G' ∈ 𝒢'`.
    Morphism,
    /// `ker f* ∈ ℂ_{𝒢'}` and `𝒢` is exactly the set of nonzero pullbacks.
    PurelyOperadic,
    /// `f*(G') ∈ 𝒢 ∪ {0}` for every `G'`.
    Weak,
    Invalid,
}

/// A map `f: V → V'` (stored as a `dim V' × dim V` matrix) between
/// building sets `𝒢` on `V` and `𝒢'` on `V'`.
#[derive(Debug, Clone)]
pub struct WeakMorphism {
    pub map: RatMatrix,
    pub source: BuildingSet,
    pub target: BuildingSet,
    pub class: MapClass,
    /// `ker f* ⊆ (V')*`.
    pub kernel_dual: Subspace,
}

impl WeakMorphism {
    pub fn is_weak(&self) -> bool {
        self.class != MapClass::Invalid
    }

    /// `f*` applied to a subspace of `(V')*`.
    pub fn pull(&self, s: &Subspace) -> Result<Subspace> {
        s.pullback(&self.map)
    }
}

pub fn classify_map(
    f: &RatMatrix,
    source: &BuildingSet,
    target: &BuildingSet,
) -> Result<WeakMorphism> {
    if f.ncols() != source.ambient_dim() || f.nrows() != target.ambient_dim() {
        return Err(Error::input(format!(
            "a {}x{} matrix is not a map from dimension {} to dimension {}",
            f.nrows(),
            f.ncols(),
            source.ambient_dim(),
            target.ambient_dim()
        )));
    }
    let kernel_dual = Subspace::kernel_dual(f);
    let mut all_in = true;
    let mut all_in_or_zero = true;
    let mut nonzero = Vec::new();
    for g in target.elements() {
        let p = g.pullback(f)?;
        if p.is_zero() {
            all_in = false;
            continue;
        }
        if source.element_index(&p).is_none() {
            all_in = false;
            all_in_or_zero = false;
        }
        nonzero.push(p);
    }
    nonzero.sort();
    nonzero.dedup();
    let class = if all_in {
        MapClass::Morphism
    } else if all_in_or_zero
        && target.lattice().contains(&kernel_dual)
        && nonzero.as_slice() == source.elements()
    {
        MapClass::PurelyOperadic
    } else if all_in_or_zero {
        MapClass::Weak
    } else {
        MapClass::Invalid
    };
    Ok(WeakMorphism {
        map: f.clone(),
        source: source.clone(),
        target: target.clone(),
        class,
        kernel_dual,
    })
}

/// Whether `𝒢 ∪ {⟨v⟩}` stays a building set: every `C ∈ ℂ_𝒢` containing
/// `v` must contain some `G ∈ 𝒢` with `v ∈ G`.
pub fn hyperplane_adjoinable(v: &[Rational], g: &BuildingSet) -> Result<bool> {
    if v.len() != g.ambient_dim() {
        return Err(Error::input(
            "vector length does not match ambient dimension",
        ));
    }
    if v.iter().all(num_traits::Zero::is_zero) {
        return Err(Error::input("the zero vector spans no hyperplane"));
    }
    let lattice = g.lattice();
    let holders: Vec<bool> = g
        .elements()
        .iter()
        .map(|e| e.contains_vector(v))
        .collect::<Result<_>>()?;
    for c in 0..lattice.len() {
        if !lattice.element(c).contains_vector(v)? {
            continue;
        }
        if !lattice.genset(c).iter().any(|e| holders[e]) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::building::closure;
    use crate::linalg::int;

    fn s(ambient: usize, rows: &[Vec<i64>]) -> Subspace {
        Subspace::from_i64_rows(ambient, rows).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn identity_onto_subset_is_morphism() {
        let big = closure(
            2,
            &[s(2, &[vec![1, 0]]), s(2, &[vec![0, 1]]), Subspace::full(2)],
            100,
        );
        // boolean plus the full space decomposes, so its closure drops V*
        let big = big.unwrap();
        let small = BuildingSet::new(2, vec![s(2, &[vec![1, 0]])], 100).unwrap();
        let m = classify_map(&RatMatrix::identity(2), &big, &small).unwrap();
        assert_eq!(m.class, MapClass::Morphism);
    }

    #[test]
    fn adjoinable_examples() {
        let g = BuildingSet::new(2, vec![Subspace::full(2)], 100).unwrap();
        assert!(hyperplane_adjoinable(&v(&[1, 0]), &g).unwrap());
        let boolean =
            BuildingSet::new(2, vec![s(2, &[vec![1, 0]]), s(2, &[vec![0, 1]])], 100).unwrap();
        assert!(!hyperplane_adjoinable(&v(&[1, 1]), &boolean).unwrap());
        assert!(hyperplane_adjoinable(&v(&[0, 0]), &boolean).is_err());
    }

    #[test]
    fn shape_mismatch_is_input_error() {
        let g = BuildingSet::new(2, vec![Subspace::full(2)], 100).unwrap();
        assert!(classify_map(&RatMatrix::identity(3), &g, &g).is_err());
    }
}
