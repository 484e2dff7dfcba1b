//! Replace E2's presentation with a damaged one and watch the ledger name
//! the claims that break.

use mindeg::catalog::catalog_entry;
use mindeg::claims::{verify, Catalog, Tier};
use mindeg::formats::GroupSpec;

fn main() -> mindeg::Result<()> {
    let mut spec = GroupSpec::from_presentation(&catalog_entry("E2", 3)?.pc_presentation);
    // drop z^3 = c; the group changes but stays consistent
    spec.powers.remove("z");
    let cat = Catalog::builtin().with_override("E2@p=3", spec);
    let ledger = verify(&cat, 3, Tier::Fast)?;
    for c in ledger.claims.iter().filter(|c| !c.passed) {
        println!("FAIL {}: observed {}, expected {}", c.id, c.observed, c.expected);
    }
    println!("{} passed, {} failed", ledger.passed, ledger.failed);
    Ok(())
}
