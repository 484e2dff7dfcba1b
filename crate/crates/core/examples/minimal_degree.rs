//! Minimal faithful permutation degree with its witness, and an
//! independent check of the emitted certificate.
//!
//!     cargo run --example minimal_degree -- G4@p=3

use mindeg::degree::{check_certificate, minimal_degree};
use mindeg::formats::{resolve_group, CertificateJson};

fn main() -> mindeg::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "E2@p=3".into());
    let g = resolve_group(&spec)?;
    let cert = minimal_degree(&g)?;
    println!("{}: mu = {}, orbits = {:?}", g.name(), cert.degree, cert.orbit_sizes);
    for h in &cert.family {
        println!("  point stabilizer <{}>", g.format_gens(h.gens()));
    }
    for (name, perm) in &cert.permutation_generators {
        println!("  {name} -> {perm}");
    }
    println!("certificate checks: {}", check_certificate(&g, &cert));

    let json = CertificateJson::new(&g, &cert);
    let back = CertificateJson::from_json(&json.to_json())?;
    println!("json round trip re-verified: {}", back.check_against(&g)?);
    Ok(())
}
