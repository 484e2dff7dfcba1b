//! The named groups, their orders and the degrees stated for them.

use mindeg::catalog::{build_catalog_group, catalog_entry, list_catalog, paper_relation_audit};

fn main() -> mindeg::Result<()> {
    let p: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for item in list_catalog(p)? {
        let mu = item.expected_mu.map(|m| m.value.to_string()).unwrap_or_else(|| "-".into());
        println!("{:<18} order {:>5}  stated mu {mu}", item.spec_ref, item.expected_order);
    }

    let entry = catalog_entry("E2", p)?;
    let g = build_catalog_group("E2", p)?;
    println!("\nE2 relations:");
    for r in &entry.paper_relations {
        println!("  {r}");
    }
    println!("audit: {:?}", paper_relation_audit(&entry, &g));
    Ok(())
}
