//! On-disk cache for lattice and forest enumerations.
//!
//! One JSON file per arrangement, named by the SHA-256 of its canonical
//! text and the cache format version. Homology is always recomputed.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use dcp_core::{Arrangement, BuildingSet, Error, ForestIndex, Result, Subspace};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

const CACHE_VERSION: &str = concat!("dcp-cache-1/", env!("CARGO_PKG_VERSION"));

pub fn arrangement_key(a: &Arrangement) -> String {
    hex::encode(Sha256::digest(a.canonical_text().as_bytes()))
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct Entry {
    version: String,
    canonical: String,
    building_set: Vec<String>,
    lattice: Vec<String>,
    /// Keyed by `m`; per lattice element, its forests.
    forests: BTreeMap<usize, Vec<Vec<Vec<usize>>>>,
}

pub struct Cache {
    path: Option<PathBuf>,
    entry: Option<Entry>,
    canonical: String,
}

impl Cache {
    /// Opens the cache slot for `a`; `dir = None` disables caching.
    pub fn open(dir: Option<&Path>, a: &Arrangement) -> Result<Cache> {
        let canonical = a.canonical_text();
        let Some(dir) = dir else {
            return Ok(Cache {
                path: None,
                entry: None,
                canonical,
            });
        };
        fs::create_dir_all(dir)
            .map_err(|e| Error::Input(format!("cache directory {}: {e}", dir.display())))?;
        let name = hex::encode(Sha256::digest(
            format!("{CACHE_VERSION}\n{canonical}").as_bytes(),
        ));
        let path = dir.join(format!("{name}.json"));
        // unreadable or stale entries are ignored and overwritten
        let entry = fs::read_to_string(&path)
            .ok()
            .and_then(|t| serde_json::from_str::<Entry>(&t).ok())
            .filter(|e| e.version == CACHE_VERSION && e.canonical == canonical);
        Ok(Cache {
            path: Some(path),
            entry,
            canonical,
        })
    }

    pub fn building_set(&mut self, a: &Arrangement, guard: usize) -> Result<BuildingSet> {
        if let Some(e) = &self.entry {
            if let Some(bs) = restore(a.ambient_dim, e) {
                // a warm cache must fail exactly where a cold run would
                if bs.lattice().len() > guard {
                    return Err(Error::Resource(format!("lattice exceeds {guard} elements")));
                }
                return Ok(bs);
            }
            self.entry = None;
        }
        let bs = a.building_set(guard)?;
        self.entry = Some(Entry {
            version: CACHE_VERSION.to_string(),
            canonical: self.canonical.clone(),
            building_set: bs.elements().iter().map(|s| s.key().to_string()).collect(),
            lattice: bs
                .lattice()
                .elements()
                .iter()
                .map(|s| s.key().to_string())
                .collect(),
            forests: BTreeMap::new(),
        });
        self.save()?;
        Ok(bs)
    }

    pub fn forest_index(&mut self, bs: &BuildingSet, m: usize) -> Result<ForestIndex> {
        if let Some(stored) = self.entry.as_ref().and_then(|e| e.forests.get(&m)) {
            if let Ok(index) = ForestIndex::from_parts(bs, m, stored.clone()) {
                return Ok(index);
            }
        }
        let index = ForestIndex::new(bs, m)?;
        if let Some(e) = &mut self.entry {
            e.forests.insert(m, index.by_root().to_vec());
            self.save()?;
        }
        Ok(index)
    }

    fn save(&self) -> Result<()> {
        let (Some(path), Some(entry)) = (&self.path, &self.entry) else {
            return Ok(());
        };
        let text = serde_json::to_string(entry).expect("cache entries serialize");
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, text)
            .and_then(|_| fs::rename(&tmp, path))
            .map_err(|e| Error::Input(format!("writing cache {}: {e}", path.display())))
    }
}

fn restore(ambient: usize, e: &Entry) -> Option<BuildingSet> {
    let parse = |keys: &[String]| -> Option<Vec<Subspace>> {
        keys.iter().map(|k| Subspace::from_key(k).ok()).collect()
    };
    BuildingSet::from_parts(ambient, parse(&e.building_set)?, parse(&e.lattice)?).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use dcp_core::families::braid;

    #[test]
    fn key_ignores_generator_order() {
        let a = braid(4).unwrap();
        let mut gens = a.generators.clone();
        gens.reverse();
        let b = Arrangement::new(4, gens).unwrap();
        assert_eq!(arrangement_key(&a), arrangement_key(&b));
        assert_ne!(arrangement_key(&a), arrangement_key(&braid(5).unwrap()));
    }

    #[test]
    fn restored_entry_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let a = braid(4).unwrap();
        let mut cold = Cache::open(Some(dir.path()), &a).unwrap();
        let bs = cold.building_set(&a, 1000).unwrap();
        let index = cold.forest_index(&bs, 1).unwrap();
        let mut warm = Cache::open(Some(dir.path()), &a).unwrap();
        assert!(warm.entry.is_some());
        let bs2 = warm.building_set(&a, 1000).unwrap();
        assert_eq!(bs.elements(), bs2.elements());
        assert_eq!(bs.lattice().elements(), bs2.lattice().elements());
        assert_eq!(
            index.by_root(),
            warm.forest_index(&bs2, 1).unwrap().by_root()
        );
    }
}
