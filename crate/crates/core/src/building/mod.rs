//! Building sets and the lattice they generate.

pub mod building_set;
pub mod lattice;
pub mod morphism;

pub use building_set::{closure, BuildingSet, Decomposition, Quotient};
pub use lattice::{finest_decomposition, GenSet, Lattice, DEFAULT_LATTICE_GUARD};
pub use morphism::{classify_map, hyperplane_adjoinable, MapClass, WeakMorphism};
