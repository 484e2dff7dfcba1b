//! Content-addressed lattice cache: the first run computes and stores,
//! the second loads, and both give the same degree.

use std::time::Instant;

use mindeg::cache::LatticeCache;
use mindeg::catalog::build_catalog_group;
use mindeg::degree::minimal_degree;

fn main() -> mindeg::Result<()> {
    let dir = std::env::temp_dir().join("mindeg-cache-example");
    let _ = std::fs::remove_dir_all(&dir);
    let cache = LatticeCache::new(&dir);

    for round in ["cold", "warm"] {
        // a fresh build so the in-memory lattice is not reused
        let g = build_catalog_group("E2", 5)?;
        let t = Instant::now();
        cache.warm(&g)?;
        let mu = minimal_degree(&g)?.degree;
        println!("{round}: mu(E2@p=5) = {mu} in {:?}", t.elapsed());
    }
    println!("cache file: {}.json in {}", build_catalog_group("E2", 5)?.table_hash(), dir.display());
    Ok(())
}
