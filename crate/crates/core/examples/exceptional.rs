//! Exceptionality scans: every normal N with mu(G/N) > mu(G).
//!
//!     cargo run --example exceptional -- EP32_H@p=2

use mindeg::exceptional::exceptional_scan;
use mindeg::formats::resolve_group;

fn main() -> mindeg::Result<()> {
    let specs: Vec<String> = std::env::args().skip(1).collect();
    let specs = if specs.is_empty() {
        vec!["E1@p=3".into(), "E2@p=3".into(), "E3@p=3".into(), "Q8@p=2".into(), "EP32_H@p=2".into()]
    } else {
        specs
    };
    for spec in specs {
        let g = resolve_group(&spec)?;
        let report = exceptional_scan(&g)?;
        print!("{spec}: mu = {}", report.mu);
        let hits: Vec<String> = report
            .distinguished()
            .map(|e| format!("<{}> -> {}", e.normal, e.mu_quotient))
            .collect();
        if hits.is_empty() {
            println!(", not exceptional ({} normal subgroups scanned)", report.entries.len());
        } else {
            println!(", exceptional at {}", hits.join(", "));
        }
    }
    Ok(())
}
