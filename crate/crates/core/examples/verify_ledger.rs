//! The claims ledger for one prime, as a table and as JSON.
//!
//!     cargo run --release --example verify_ledger -- 5 slow

use mindeg::claims::{verify, Catalog, Tier};

fn main() -> mindeg::Result<()> {
    let mut args = std::env::args().skip(1);
    let p: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(3);
    let tier: Tier = args.next().map(|s| s.parse()).transpose()?.unwrap_or(Tier::Fast);
    let ledger = verify(&Catalog::builtin(), p, tier)?;
    print!("{}", ledger.to_table());
    if let Some(c) = ledger.get("thm5.E2.mu") {
        println!("\none entry as JSON:\n{}", serde_json::to_string_pretty(c).unwrap());
    }
    Ok(())
}
