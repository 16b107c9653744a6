//! Building sets: closure, decomposition, restriction, quotient, products.

use std::sync::Arc;

use super::lattice::{finest_decomposition, Lattice, DEFAULT_LATTICE_GUARD};
use crate::error::{Error, Result};
use crate::linalg::{QuotientMap, Subspace};

/// A lattice element written as the direct sum of its components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub parent: Subspace,
    pub components: Vec<Subspace>,
}

#[derive(Debug)]
struct Inner {
    ambient: usize,
    elements: Vec<Subspace>,
    lattice: Lattice,
    /// Lattice index of each building element.
    element_pos: Vec<usize>,
    /// Per lattice element: building-element indices of its components.
    components: Vec<Vec<usize>>,
}

/// A collection `𝒢` with `𝒢 = 𝒢̄`, together with its lattice `ℂ_𝒢`.
/// Cheap to clone.
#[derive(Debug, Clone)]
pub struct BuildingSet {
    inner: Arc<Inner>,
}

impl PartialEq for BuildingSet {
    fn eq(&self, other: &Self) -> bool {
        self.inner.ambient == other.inner.ambient && self.inner.elements == other.inner.elements
    }
}

impl Eq for BuildingSet {}

/// Indecomposable elements of the lattice spanned by `arrangement`.
pub fn closure(ambient: usize, arrangement: &[Subspace], guard: usize) -> Result<BuildingSet> {
    let lattice = Lattice::generate(ambient, arrangement, guard)?;
    let mut indecomposable = Vec::new();
    for i in 1..lattice.len() {
        let u = lattice.element(i);
        let parts: Vec<Subspace> = lattice
            .genset(i)
            .iter()
            .map(|g| lattice.generators()[g].clone())
            .collect();
        if finest_decomposition(u, &parts)?.len() == 1 {
            indecomposable.push(u.clone());
        }
    }
    BuildingSet::from_closed(ambient, indecomposable, guard)
}

impl BuildingSet {
    /// Validates that `elements` is already closed.
    pub fn new(ambient: usize, elements: Vec<Subspace>, guard: usize) -> Result<BuildingSet> {
        let candidate = Self::from_closed(ambient, elements, guard)?;
        let closed = closure(ambient, candidate.elements(), guard)?;
        if closed != candidate {
            return Err(Error::input(format!(
                "not a building set: its closure has {} elements, not {}",
                closed.len(),
                candidate.len()
            )));
        }
        Ok(candidate)
    }

    pub fn with_default_guard(ambient: usize, elements: Vec<Subspace>) -> Result<BuildingSet> {
        Self::new(ambient, elements, DEFAULT_LATTICE_GUARD)
    }

    /// Builds the structure without checking closedness.
    pub(crate) fn from_closed(
        ambient: usize,
        mut elements: Vec<Subspace>,
        guard: usize,
    ) -> Result<BuildingSet> {
        elements.retain(|e| !e.is_zero());
        elements.sort();
        elements.dedup();
        let lattice = Lattice::generate(ambient, &elements, guard)?;
        Ok(Self::assemble(ambient, elements, lattice))
    }

    /// Restores a building set from its elements and a stored lattice
    /// element list, skipping lattice generation. Closedness is trusted.
    pub fn from_parts(
        ambient: usize,
        mut elements: Vec<Subspace>,
        lattice: Vec<Subspace>,
    ) -> Result<BuildingSet> {
        elements.retain(|e| !e.is_zero());
        elements.sort();
        elements.dedup();
        let lattice = Lattice::from_elements(ambient, &elements, lattice)?;
        Ok(Self::assemble(ambient, elements, lattice))
    }

    fn assemble(ambient: usize, elements: Vec<Subspace>, lattice: Lattice) -> BuildingSet {
        // generators of the lattice are exactly `elements`, in the same order
        let element_pos: Vec<usize> = elements
            .iter()
            .map(|e| lattice.index_of(e).expect("generator is a lattice element"))
            .collect();
        let components = (0..lattice.len())
            .map(|i| {
                let inside: Vec<usize> = lattice.genset(i).iter().collect();
                inside
                    .iter()
                    .copied()
                    .filter(|&g| {
                        !inside
                            .iter()
                            .any(|&h| h != g && lattice.leq(element_pos[g], element_pos[h]))
                    })
                    .collect()
            })
            .collect();
        BuildingSet {
            inner: Arc::new(Inner {
                ambient,
                elements,
                lattice,
                element_pos,
                components,
            }),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.inner.ambient
    }

    pub fn elements(&self) -> &[Subspace] {
        &self.inner.elements
    }

    pub fn element(&self, g: usize) -> &Subspace {
        &self.inner.elements[g]
    }

    pub fn len(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.elements.is_empty()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.inner.lattice
    }

    /// `rt(𝒢)`, the sum of all elements.
    pub fn root(&self) -> &Subspace {
        let l = &self.inner.lattice;
        l.element(l.root())
    }

    pub fn element_index(&self, s: &Subspace) -> Option<usize> {
        self.inner.elements.binary_search(s).ok()
    }

    /// Lattice index of building element `g`.
    pub fn element_position(&self, g: usize) -> usize {
        self.inner.element_pos[g]
    }

    /// `element(g) ⊆ element(h)`.
    pub fn element_leq(&self, g: usize, h: usize) -> bool {
        let pos = &self.inner.element_pos;
        self.inner.lattice.leq(pos[g], pos[h])
    }

    /// Building-element indices of the components of lattice element `i`.
    pub fn components_of(&self, i: usize) -> &[usize] {
        &self.inner.components[i]
    }

    pub fn lattice_index(&self, u: &Subspace) -> Result<usize> {
        self.inner
            .lattice
            .index_of(u)
            .ok_or_else(|| Error::input(format!("{u} is not in the lattice of the building set")))
    }

    pub fn decompose(&self, u: &Subspace) -> Result<Decomposition> {
        let i = self.lattice_index(u)?;
        Ok(Decomposition {
            parent: u.clone(),
            components: self.inner.components[i]
                .iter()
                .map(|&g| self.inner.elements[g].clone())
                .collect(),
        })
    }

    /// `𝒢|_W = {G ∈ 𝒢 : G ⊆ W}`; always a building set.
    pub fn restrict(&self, w: &Subspace) -> Result<BuildingSet> {
        let mut kept = Vec::new();
        for g in self.elements() {
            if w.contains(g)? {
                kept.push(g.clone());
            }
        }
        Self::from_closed(self.ambient_dim(), kept, usize::MAX)
    }

    /// `𝒢/C` in the coordinates of [`QuotientMap`].
    pub fn quotient(&self, c: &Subspace) -> Result<Quotient> {
        self.lattice_index(c)?;
        let map = QuotientMap::new(c);
        let mut images = Vec::new();
        for g in self.elements() {
            if !c.contains(g)? {
                images.push(map.project(g)?);
            }
        }
        images.sort();
        images.dedup();
        let building_set = closure(map.target_dim(), &images, DEFAULT_LATTICE_GUARD)?;
        let closure_changed = building_set.elements() != images.as_slice();
        Ok(Quotient {
            building_set,
            closure_changed,
            map,
        })
    }

    /// `𝒢 ⊕ 𝒢'` on the concatenated space.
    pub fn direct_sum(&self, other: &BuildingSet) -> Result<BuildingSet> {
        let ambient = self.ambient_dim() + other.ambient_dim();
        let mut elements = Vec::with_capacity(self.len() + other.len());
        for g in self.elements() {
            elements.push(g.embed(0, ambient)?);
        }
        for g in other.elements() {
            elements.push(g.embed(self.ambient_dim(), ambient)?);
        }
        Self::from_closed(ambient, elements, DEFAULT_LATTICE_GUARD)
    }

    /// Whether removing element `g` leaves a building set.
    pub fn removal_is_closed(&self, g: usize) -> Result<bool> {
        let mut rest = self.elements().to_vec();
        rest.remove(g);
        let candidate = Self::from_closed(self.ambient_dim(), rest, DEFAULT_LATTICE_GUARD)?;
        let closed = closure(
            self.ambient_dim(),
            candidate.elements(),
            DEFAULT_LATTICE_GUARD,
        )?;
        Ok(closed == candidate)
    }

    /// Same set with element `g` removed (no closedness check).
    pub fn without(&self, g: usize) -> Result<BuildingSet> {
        let mut rest = self.elements().to_vec();
        rest.remove(g);
        Self::from_closed(self.ambient_dim(), rest, DEFAULT_LATTICE_GUARD)
    }
}

/// Result of [`BuildingSet::quotient`].
#[derive(Debug, Clone)]
pub struct Quotient {
    pub building_set: BuildingSet,
    /// Whether the projected elements needed closing up.
    pub closure_changed: bool,
    pub map: QuotientMap,
}
