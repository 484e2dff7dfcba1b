//! The set-cover solver against the exhaustive family search and the
//! abelian invariant formula.

use std::sync::Arc;

use mindeg::catalog::{build_catalog_group, catalog_names};
use mindeg::degree::{check_certificate, minimal_degree, mu_abelian_crosscheck, mu_bruteforce_oracle, ORACLE_BOUND};
use mindeg::group::{quotient_group, subgroup_as_group, FiniteGroup};
use mindeg::lattice;

fn corpus() -> Vec<Arc<FiniteGroup>> {
    let mut out = Vec::new();
    for name in catalog_names(3) {
        out.push(build_catalog_group(&name, 3).unwrap());
    }
    for name in ["Q8", "D8", "Zn(2)", "Zn(4)", "Zn(8)", "ElemAb(2)", "ElemAb(3)"] {
        out.push(build_catalog_group(name, 2).unwrap());
    }
    for name in ["Zn(5)", "Zn(25)", "ElemAb(2)"] {
        out.push(build_catalog_group(name, 5).unwrap());
    }
    out.retain(|g| g.order() <= ORACLE_BOUND);
    out
}

#[test]
fn solver_equals_oracle_on_groups_and_quotients() {
    for g in corpus() {
        let mut targets = vec![g.clone()];
        for n in lattice::normal_subgroups(&g).unwrap() {
            if !n.is_trivial() {
                targets.push(quotient_group(&g, &n).unwrap().0);
            }
        }
        for q in targets {
            let cert = minimal_degree(&q).unwrap();
            assert_eq!(cert.degree, mu_bruteforce_oracle(&q).unwrap().degree, "{}", q.name());
            assert!(check_certificate(&q, &cert), "{}", q.name());
        }
    }
}

#[test]
fn abelian_groups_match_invariant_sum() {
    for g in corpus().into_iter().filter(|g| g.is_abelian()) {
        assert_eq!(mu_abelian_crosscheck(&g).unwrap(), minimal_degree(&g).unwrap().degree, "{}", g.name());
    }
    let z9z3 = mindeg::catalog::resolve_ref("Zn(9)@p=3*Zn(3)@p=3").unwrap();
    assert_eq!(minimal_degree(&z9z3).unwrap().degree, 12);
    assert!(mu_abelian_crosscheck(&build_catalog_group("H", 3).unwrap()).is_err());
}

#[test]
fn subgroups_never_need_more_points() {
    for g in corpus() {
        let mu = minimal_degree(&g).unwrap().degree;
        for h in lattice::lattice(&g).unwrap().subgroups() {
            let sub = subgroup_as_group(&g, h).unwrap();
            assert!(minimal_degree(&sub).unwrap().degree <= mu, "{} in {}", sub.name(), g.name());
        }
    }
}

#[test]
fn trivial_group_has_degree_zero() {
    let g = build_catalog_group("Zn(3)", 3).unwrap();
    let q = quotient_group(&g, &g.whole()).unwrap().0;
    assert_eq!(minimal_degree(&q).unwrap().degree, 0);
}

#[test]
fn certificates_are_reproducible() {
    let g = build_catalog_group("E3", 3).unwrap();
    let a = minimal_degree(&g).unwrap();
    let again = build_catalog_group("E3", 3).unwrap();
    let b = minimal_degree(&again).unwrap();
    let bits = |c: &mindeg::degree::MuCertificate| c.family.iter().map(|h| h.bits().clone()).collect::<Vec<_>>();
    assert_eq!(bits(&a), bits(&b));
    assert_eq!(
        a.permutation_generators.iter().map(|(n, p)| format!("{n}{p}")).collect::<Vec<_>>(),
        b.permutation_generators.iter().map(|(n, p)| format!("{n}{p}")).collect::<Vec<_>>()
    );
}
