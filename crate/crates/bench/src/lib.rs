//! Fixtures shared by the benchmarks.

use dcp_core::families::braid;
use dcp_core::{BuildingSet, DEFAULT_LATTICE_GUARD};

/// Closure of the braid arrangement on `n` points.
pub fn braid_set(n: usize) -> BuildingSet {
    braid(n)
        .and_then(|a| a.building_set(DEFAULT_LATTICE_GUARD))
        .expect("braid arrangements close")
}
