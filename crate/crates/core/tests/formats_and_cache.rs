//! JSON round trips and the lattice cache, through the public API only.

use mindeg::cache::LatticeCache;
use mindeg::catalog::{build_catalog_group, catalog_entry, catalog_names};
use mindeg::claims::{verify, Catalog, Ledger, Tier};
use mindeg::degree::minimal_degree;
use mindeg::exceptional::exceptional_scan;
use mindeg::formats::{CertificateJson, GroupSpec, ReportJson};
use mindeg::group::build_pc_group;

#[test]
fn every_catalog_presentation_round_trips() {
    for p in [3, 5] {
        for name in catalog_names(p) {
            let pres = catalog_entry(&name, p).unwrap().pc_presentation;
            let spec = GroupSpec::from_presentation(&pres);
            let back = GroupSpec::from_json(&spec.to_json()).unwrap();
            assert_eq!(back.to_presentation().unwrap(), pres, "{name}@p={p}");
        }
    }
}

#[test]
fn certificates_and_reports_round_trip() {
    for name in ["E1", "G4", "L"] {
        let g = build_catalog_group(name, 3).unwrap();
        let cert = CertificateJson::new(&g, &minimal_degree(&g).unwrap());
        assert_eq!(CertificateJson::from_json(&cert.to_json()).unwrap(), cert);
        assert!(cert.check_against(&g).unwrap());
        let report = ReportJson::new(&g, &exceptional_scan(&g).unwrap());
        assert_eq!(ReportJson::from_json(&report.to_json()).unwrap(), report);
        assert_eq!(report.schema, 1);
    }
}

#[test]
fn ledger_round_trips() {
    let ledger = verify(&Catalog::builtin(), 3, Tier::Fast).unwrap();
    assert_eq!(Ledger::from_json(&ledger.to_json()).unwrap(), ledger);
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"prime": 3, "generators": ["x"], "extra": 1}"#;
    assert!(GroupSpec::from_json(text).is_err());
}

#[test]
fn warm_and_cold_lattices_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = LatticeCache::new(dir.path());
    for name in ["E3", "G1", "H"] {
        let cold = build_catalog_group(name, 3).unwrap();
        let cold_cert = minimal_degree(&cold).unwrap();
        cache.warm(&cold).unwrap();

        let pres = catalog_entry(name, 3).unwrap().pc_presentation;
        let fresh = build_pc_group(pres).unwrap();
        assert!(cache.load(&fresh).is_some(), "{name}");
        cache.warm(&fresh).unwrap();
        let warm_cert = minimal_degree(&fresh).unwrap();
        assert_eq!(warm_cert.degree, cold_cert.degree);
        assert_eq!(warm_cert.orbit_sizes, cold_cert.orbit_sizes);
        let report_cold = ReportJson::new(&cold, &exceptional_scan(&cold).unwrap());
        let report_warm = ReportJson::new(&fresh, &exceptional_scan(&fresh).unwrap());
        assert_eq!(report_cold.entries, report_warm.entries);
    }
}

#[test]
fn cached_verify_matches_uncached() {
    let dir = tempfile::tempdir().unwrap();
    let cached = Catalog::builtin().with_cache(LatticeCache::new(dir.path()));
    let a = verify(&cached, 3, Tier::Fast).unwrap();
    let again = Catalog::builtin().with_cache(LatticeCache::new(dir.path()));
    let b = verify(&again, 3, Tier::Fast).unwrap();
    let plain = verify(&Catalog::builtin(), 3, Tier::Fast).unwrap();
    assert_eq!(a.to_json(), plain.to_json());
    assert_eq!(b.to_json(), plain.to_json());
}
