//! Worked examples for the named groups, at p = 3 and p = 5.

use mindeg::catalog::{build_catalog_group, resolve_ref};
use mindeg::claims::{verify, Catalog, Tier};
use mindeg::degree::{minimal_degree, mu_abelian_crosscheck};
use mindeg::exceptional::{check_distinguished, exceptional_scan, neumann_example, quotient_mu_both_ways};
use mindeg::lattice::{self, socle_minimal_normals};

#[test]
fn e_groups_at_three() {
    for e in ["E1", "E2", "E3"] {
        let g = build_catalog_group(e, 3).unwrap();
        let n = g.subgroup_of_words(&["n"]).unwrap();
        assert_eq!(check_distinguished(&g, &n).unwrap(), (18, 27, true), "{e}");
        assert_eq!(minimal_degree(&g).unwrap().orbit_sizes, [9, 9]);
        assert_eq!(quotient_mu_both_ways(&g, &n).unwrap(), (27, 27));
    }
}

#[test]
fn e_groups_at_five() {
    for e in ["E1", "E2", "E3"] {
        let g = build_catalog_group(e, 5).unwrap();
        let n = g.subgroup_of_words(&["n"]).unwrap();
        assert_eq!(check_distinguished(&g, &n).unwrap(), (50, 125, true), "{e}");
    }
}

#[test]
fn g4_and_order_p3_helpers() {
    for (p, mu) in [(3, 12), (5, 30)] {
        let g = build_catalog_group("G4", p).unwrap();
        assert_eq!(minimal_degree(&g).unwrap().degree, mu);
        if p == 3 {
            assert!(!exceptional_scan(&g).unwrap().is_exceptional());
        }
    }
    assert_eq!(minimal_degree(&resolve_ref("H@p=3*Zn(3)@p=3").unwrap()).unwrap().degree, 12);
    assert_eq!(minimal_degree(&resolve_ref("L@p=3*Zn(3)@p=3").unwrap()).unwrap().degree, 12);
}

#[test]
fn order_32_examples() {
    let g = build_catalog_group("EP32_G", 2).unwrap();
    let n = g.subgroup_of_words(&["x^4 y^2"]).unwrap();
    assert_eq!(check_distinguished(&g, &n).unwrap(), (12, 16, true));
    let h = build_catalog_group("EP32_H", 2).unwrap();
    let n = h.subgroup_of_words(&["n"]).unwrap();
    assert_eq!(check_distinguished(&h, &n).unwrap(), (12, 16, true));
}

#[test]
fn socle_and_abelian_examples() {
    let g = build_catalog_group("E2", 3).unwrap();
    assert_eq!(socle_minimal_normals(&g).len(), 4);
    let z9 = build_catalog_group("Zn(9)", 3).unwrap();
    assert_eq!(mu_abelian_crosscheck(&z9).unwrap(), 9);
    let z3cubed = build_catalog_group("ElemAb(3)", 3).unwrap();
    assert_eq!(mu_abelian_crosscheck(&z3cubed).unwrap(), 9);
    assert_eq!(lattice::abelian_invariants(&z3cubed, &z3cubed.whole()).unwrap(), [3, 3, 3]);
}

#[test]
fn q8_powers() {
    assert_eq!(neumann_example(1).unwrap(), (8, 8));
    assert_eq!(neumann_example(2).unwrap(), (16, 8));
    // 16 is the figure usually quoted; the quotient is extraspecial of minus type
    assert_eq!(neumann_example(3).unwrap(), (24, 32));
}

#[test]
fn verify_at_five_passes_fast_tier() {
    let ledger = verify(&Catalog::builtin(), 5, Tier::Fast).unwrap();
    let failed: Vec<_> = ledger.claims.iter().filter(|c| !c.passed).map(|c| &c.id).collect();
    assert!(failed.is_empty(), "{failed:?}");
    assert_eq!(ledger.get("thm5.E2.mu").unwrap().observed, "50");
}

#[test]
fn slow_tier_at_five_has_only_the_known_failure() {
    let ledger = verify(&Catalog::builtin(), 5, Tier::Slow).unwrap();
    let failed: Vec<_> = ledger.claims.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    assert_eq!(failed, ["neumann.n3.quotient"]);
    assert!(ledger.get("sep.G2_vs_G3.exhaustive").unwrap().passed);
}
