//! On-disk subgroup lattice cache, keyed by the hash of the Cayley table.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::error::Result;
use crate::group::FiniteGroup;
use crate::lattice::{self, LatticeIndex};

pub const FORMAT_VERSION: u32 = 1;
pub const ENV_VAR: &str = "MINDEG_CACHE_DIR";
pub const DEFAULT_DIR: &str = ".mindeg-cache";

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format_version: u32,
    table_hash: String,
    order: usize,
    /// Hex-encoded subgroup bitsets.
    subgroups: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct LatticeCache {
    dir: PathBuf,
}

impl LatticeCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LatticeCache { dir: dir.into() }
    }

    /// `$MINDEG_CACHE_DIR`, or `./.mindeg-cache`.
    pub fn from_env() -> Self {
        LatticeCache::new(std::env::var_os(ENV_VAR).map(PathBuf::from).unwrap_or_else(|| DEFAULT_DIR.into()))
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, hash: &str) -> PathBuf {
        self.dir.join(format!("{hash}.json"))
    }

    /// Cached lattice of `g`, if a valid entry exists. Entries that fail to
    /// parse or do not describe subgroups of `g` count as misses.
    pub fn load(&self, g: &FiniteGroup) -> Option<LatticeIndex> {
        let hash = g.table_hash();
        let text = std::fs::read_to_string(self.path_for(&hash)).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        if file.format_version != FORMAT_VERSION || file.table_hash != hash || file.order != g.order() {
            return None;
        }
        let mut sets = Vec::with_capacity(file.subgroups.len());
        for s in &file.subgroups {
            let b = Bitset::from_hex(g.order(), s)?;
            if !is_closed(g, &b) {
                return None;
            }
            sets.push(b);
        }
        let has_trivial = sets.iter().any(|b| b.count() == 1);
        let has_whole = sets.iter().any(|b| b.count() == g.order());
        if !has_trivial || !has_whole {
            return None;
        }
        Some(LatticeIndex::from_bitsets(g, sets))
    }

    pub fn store(&self, g: &FiniteGroup, l: &LatticeIndex) -> Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let file = CacheFile {
            format_version: FORMAT_VERSION,
            table_hash: g.table_hash(),
            order: g.order(),
            subgroups: l.subgroups().iter().map(|h| h.bits().to_hex()).collect(),
        };
        let path = self.path_for(&file.table_hash);
        let tmp = path.with_extension("json.tmp");
        std::fs::write(&tmp, serde_json::to_string(&file)?)?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }

    /// Installs the lattice of `g` from disk, or computes and stores it.
    pub fn warm(&self, g: &FiniteGroup) -> Result<Arc<LatticeIndex>> {
        if let Some(l) = self.load(g) {
            return Ok(lattice::seed_lattice(g, Arc::new(l)));
        }
        let l = lattice::lattice(g)?;
        // an unwritable cache directory only costs recomputation
        let _ = self.store(g, &l);
        Ok(l)
    }
}

fn is_closed(g: &FiniteGroup, b: &Bitset) -> bool {
    b.contains(0) && b.iter().all(|x| b.iter().all(|y| b.contains(g.mul(x, y))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog_group;
    use crate::degree::minimal_degree;

    #[test]
    fn warm_equals_cold() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(dir.path());
        let cold = build_catalog_group("G4", 3).unwrap();
        let cold_mu = minimal_degree(&cold).unwrap();
        cache.store(&cold, &lattice::lattice(&cold).unwrap()).unwrap();

        let warm = build_catalog_group("G4", 3).unwrap();
        let l = cache.load(&warm).expect("cache hit");
        assert_eq!(l.len(), lattice::lattice(&cold).unwrap().len());
        cache.warm(&warm).unwrap();
        let warm_mu = minimal_degree(&warm).unwrap();
        assert_eq!(warm_mu.degree, cold_mu.degree);
        assert_eq!(warm_mu.orbit_sizes, cold_mu.orbit_sizes);
        let bits = |c: &crate::degree::MuCertificate| c.family.iter().map(|h| h.bits().clone()).collect::<Vec<_>>();
        assert_eq!(bits(&warm_mu), bits(&cold_mu));
    }

    #[test]
    fn corrupt_entry_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = LatticeCache::new(dir.path());
        let g = build_catalog_group("L", 3).unwrap();
        cache.warm(&g).unwrap();
        let path = cache.path_for(&g.table_hash());
        let text = std::fs::read_to_string(&path).unwrap();
        // drop the whole group from the list
        let mut file: CacheFile = serde_json::from_str(&text).unwrap();
        file.subgroups.pop();
        std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
        assert!(cache.load(&g).is_none());
        std::fs::write(&path, "not json").unwrap();
        assert!(cache.load(&g).is_none());
    }
}
