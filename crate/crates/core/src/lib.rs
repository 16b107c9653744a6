//! Exact integral homology of real De Concini–Procesi wonderful models,
//! computed from building-set combinatorics.

pub mod building;
pub mod dcphom;
pub mod error;
pub mod families;
pub mod forest;
pub mod linalg;
pub mod operad;
pub mod poset;

pub use building::{closure, BuildingSet, Lattice, MapClass, WeakMorphism, DEFAULT_LATTICE_GUARD};
pub use dcphom::{CountTable, FullHomology, GradedTable};
pub use error::{Error, Result};
pub use families::{parse_arrangement, Arrangement};
pub use forest::{Forest, ForestIndex};
pub use linalg::{ChainComplex, HomologyGroup, IntMatrix, RatMatrix, Rational, Subspace};
pub use poset::{PosetChain, PosetView};
