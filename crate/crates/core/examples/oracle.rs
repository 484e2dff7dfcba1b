//! The set-cover solver against the exhaustive family search, on every
//! catalog group small enough for the latter.

use mindeg::catalog::{build_catalog_group, catalog_names};
use mindeg::degree::{minimal_degree, mu_bruteforce_oracle, ORACLE_BOUND};

fn main() -> mindeg::Result<()> {
    for name in catalog_names(3) {
        let g = build_catalog_group(&name, 3)?;
        if g.order() > ORACLE_BOUND {
            continue;
        }
        let fast = minimal_degree(&g)?.degree;
        let slow = mu_bruteforce_oracle(&g)?.degree;
        println!("{name:<10} |G| = {:>2}  solver {fast:>2}  oracle {slow:>2}", g.order());
        assert_eq!(fast, slow);
    }
    Ok(())
}
