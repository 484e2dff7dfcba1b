//! Randomized properties of the arithmetic, the quotient and product
//! constructions, and the faithfulness criterion.

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use mindeg::catalog::{build_catalog_group, resolve_ref};
use mindeg::degree::{action_kernel, minimal_degree};
use mindeg::group::{projections, quotient_group, FiniteGroup};
use mindeg::hom::find_isomorphism;
use mindeg::lattice::{self, Subgroup};
use mindeg::pc::{Collector, GroupElement};

fn e2_at_5() -> &'static Arc<FiniteGroup> {
    static G: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    G.get_or_init(|| build_catalog_group("E2", 5).unwrap())
}

fn g4_at_3() -> &'static Arc<FiniteGroup> {
    static G: OnceLock<Arc<FiniteGroup>> = OnceLock::new();
    G.get_or_init(|| build_catalog_group("G4", 3).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn table_is_associative(a in 0usize..3125, b in 0usize..3125, c in 0usize..3125) {
        let g = e2_at_5();
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
    }

    #[test]
    fn collection_agrees_with_table(a in 0usize..3125, b in 0usize..3125) {
        let g = e2_at_5();
        let pres = g.pc_presentation().unwrap();
        let mut col = Collector::new(pres).unwrap();
        let (x, y) = (GroupElement::unrank(a, 5, 5), GroupElement::unrank(b, 5, 5));
        let prod = col.multiply(&x, &y);
        prop_assert!(prod.exponents.iter().all(|&e| e < 5));
        prop_assert_eq!(prod.rank(5), g.mul(a, b));
    }

    #[test]
    fn faithfulness_criteria_agree(picks in proptest::collection::vec(0usize..104, 1..4)) {
        let g = g4_at_3();
        let l = lattice::lattice(g).unwrap();
        let family: Vec<Subgroup> = picks.iter().map(|&i| l.get(i % l.len()).clone()).collect();
        let mut meet = g.whole();
        for h in &family {
            meet = meet.intersection(g, &lattice::core(g, h));
        }
        let by_cores = meet.is_trivial();
        let by_socle = lattice::socle_minimal_normals(g)
            .iter()
            .all(|m| family.iter().any(|h| !m.is_subgroup_of(&lattice::core(g, h))));
        let by_kernel = action_kernel(g, &family).is_trivial();
        prop_assert_eq!(by_cores, by_socle);
        prop_assert_eq!(by_cores, by_kernel);
        if by_cores {
            let degree: usize = family.iter().map(|h| g.order() / h.order()).sum();
            prop_assert!(degree >= minimal_degree(g).unwrap().degree);
        }
    }

    #[test]
    fn abelian_degree_is_sum_of_cyclic_factors(ks in proptest::collection::vec(1u32..4, 1..4)) {
        let spec: Vec<String> = ks.iter().map(|&k| format!("Zn({})@p=3", 3usize.pow(k))).collect();
        let total: usize = ks.iter().map(|&k| 3usize.pow(k)).sum();
        prop_assume!(ks.iter().sum::<u32>() <= 6);
        let g = resolve_ref(&spec.join("*")).unwrap();
        prop_assert_eq!(minimal_degree(&g).unwrap().degree, total);
    }
}

#[test]
fn natural_maps_are_homomorphisms_with_kernel_n() {
    for name in ["E2", "G4", "L"] {
        let g = build_catalog_group(name, 3).unwrap();
        for n in lattice::normal_subgroups(&g).unwrap() {
            let (q, map) = quotient_group(&g, &n).unwrap();
            let images = map.extend().unwrap();
            for a in g.elements() {
                for b in g.elements().step_by(7) {
                    assert_eq!(images[g.mul(a, b)], q.mul(images[a], images[b]));
                }
            }
            assert_eq!(map.kernel().unwrap().bits(), n.bits());
        }
    }
}

#[test]
fn products_have_the_right_size_and_projections() {
    for spec in ["Q8@p=2*D8@p=2", "H@p=3*Zn(3)@p=3", "L@p=3*ElemAb(2)@p=3"] {
        let g = resolve_ref(spec).unwrap();
        let (pl, pr) = projections(&g).unwrap();
        assert_eq!(g.order(), pl.target().order() * pr.target().order());
        for map in [pl, pr] {
            map.check_relations().unwrap();
            let images = map.extend().unwrap();
            for a in g.elements().step_by(3) {
                for b in g.elements().step_by(5) {
                    assert_eq!(images[g.mul(a, b)], map.target().mul(images[a], images[b]));
                }
            }
        }
    }
}

#[test]
fn isomorphisms_found_are_bijections() {
    let a = build_catalog_group("ElemAb(2)", 3).unwrap();
    let b = resolve_ref("Zn(3)@p=3*Zn(3)@p=3").unwrap();
    let iso = find_isomorphism(&a, &b).expect("isomorphic");
    let mut images = iso.extend().unwrap();
    images.sort_unstable();
    images.dedup();
    assert_eq!(images.len(), b.order());
    let h = build_catalog_group("H", 3).unwrap();
    let l = build_catalog_group("L", 3).unwrap();
    assert!(find_isomorphism(&h, &l).is_none());
}
