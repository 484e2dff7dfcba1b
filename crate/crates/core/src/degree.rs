//! Minimal faithful permutation degree.
//!
//! A family of subgroups `H_1..H_k` gives a faithful action on the disjoint
//! union of coset spaces exactly when the cores of the `H_i` intersect
//! trivially. In a p-group every nontrivial normal subgroup meets the
//! center, hence contains one of the order-p central subgroups. So a family
//! is faithful iff each minimal normal subgroup is omitted by some core,
//! which turns the minimization into a weighted set cover over the
//! (small) set of minimal normal subgroups.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::lattice::{self, LatticeIndex, Subgroup};

/// A permutation of `0..degree`, shown 1-based in cycle notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Self {
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    /// Parses 1-based cycle notation such as `"(1 2 3)(4 5)"`.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let s = s.trim();
        if s == "()" || s.is_empty() {
            return Ok(Permutation { images });
        }
        let mut rest = s;
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("bad cycle notation {s:?}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let pts = open[..close]
                .split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if v >= 1 && v <= degree => Ok(v - 1),
                    _ => Err(Error::Parse(format!("bad point {t:?}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            for (i, &a) in pts.iter().enumerate() {
                images[a] = pts[(i + 1) % pts.len()] as u32;
            }
            rest = open[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// One conjugacy class of subgroups as a set-cover column.
#[derive(Clone, Debug)]
pub struct CoverCandidate {
    /// Lattice id of the class representative.
    pub subgroup: usize,
    pub index: usize,
    /// Minimal normal subgroups (by socle position) not inside the core.
    pub covered: Bitset,
}

/// A minimal faithful permutation representation with its witness family.
#[derive(Clone, Debug)]
pub struct MuCertificate {
    pub group: String,
    pub degree: usize,
    pub family: Vec<Subgroup>,
    /// Lattice ids of `family`.
    pub family_ids: Vec<usize>,
    pub orbit_sizes: Vec<usize>,
    pub permutation_generators: Vec<(String, Permutation)>,
}

/// Set-cover columns for `g`, one per non-dominated conjugacy class.
pub fn coverage_map(g: &FiniteGroup, l: &LatticeIndex) -> Vec<CoverCandidate> {
    let socle = lattice::socle_minimal_normals(g);
    let mut cands: Vec<CoverCandidate> = l
        .classes()
        .iter()
        .map(|members| members[0])
        .filter(|&rep| rep != l.whole_id())
        .map(|rep| {
            let core = l.core(rep);
            let covered = Bitset::from_indices(
                socle.len(),
                socle
                    .iter()
                    .enumerate()
                    .filter(|(_, m)| !m.is_subgroup_of(core))
                    .map(|(i, _)| i),
            );
            CoverCandidate {
                subgroup: rep,
                index: g.order() / l.get(rep).order(),
                covered,
            }
        })
        .filter(|c| !c.covered.is_empty())
        .collect();
    cands.sort_by(|a, b| {
        a.index
            .cmp(&b.index)
            .then(b.covered.count().cmp(&a.covered.count()))
            .then(l.get(a.subgroup).bits().cmp(l.get(b.subgroup).bits()))
    });
    // in sorted order, anything dominated is dominated by an earlier entry
    let mut kept: Vec<CoverCandidate> = Vec::new();
    for c in cands {
        if !kept
            .iter()
            .any(|k| k.index <= c.index && c.covered.is_subset(&k.covered))
        {
            kept.push(c);
        }
    }
    kept
}

/// Cheapest cost of covering `uncovered`, memoized on the uncovered set.
/// Distinct families reaching the same set share one entry, which is what
/// keeps large elementary abelian socles tractable.
struct CoverCost<'a> {
    cands: &'a [CoverCandidate],
    memo: HashMap<Bitset, Option<usize>>,
}

impl CoverCost<'_> {
    fn minus(uncovered: &Bitset, c: &CoverCandidate) -> Bitset {
        let mut rest = uncovered.clone();
        for e in c.covered.iter() {
            rest.remove(e);
        }
        rest
    }

    fn cost(&mut self, uncovered: &Bitset) -> Option<usize> {
        if uncovered.is_empty() {
            return Some(0);
        }
        if let Some(&v) = self.memo.get(uncovered) {
            return v;
        }
        // every cover hits this element, so branching on it suffices
        let elem = uncovered.iter().next().unwrap();
        let mut best: Option<usize> = None;
        for c in self.cands {
            if !c.covered.contains(elem) {
                continue;
            }
            let rest = Self::minus(uncovered, c);
            if let Some(v) = self.cost(&rest) {
                let total = v + c.index;
                if best.is_none_or(|b| total < b) {
                    best = Some(total);
                }
            }
        }
        self.memo.insert(uncovered.clone(), best);
        best
    }
}

/// Exact weighted set cover over the candidate columns. Among optimal
/// families, returns the one whose sorted keys are lexicographically
/// least. Indices point into `cands`; `None` if no cover exists.
pub fn solve_cover(universe: usize, cands: &[CoverCandidate], keys: Vec<&Bitset>) -> Option<(usize, Vec<usize>)> {
    let mut solver = CoverCost {
        cands,
        memo: HashMap::new(),
    };
    let mut uncovered = Bitset::full(universe);
    let total = solver.cost(&uncovered)?;
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(keys[b]).then(a.cmp(&b)));
    // greedy: the least key that still extends to an optimal family
    let mut chosen = Vec::new();
    let mut spent = 0;
    while !uncovered.is_empty() {
        let next = order.iter().copied().find(|&i| {
            let c = &cands[i];
            if chosen.contains(&i) || !c.covered.iter().any(|e| uncovered.contains(e)) {
                return false;
            }
            let rest = CoverCost::minus(&uncovered, c);
            solver.cost(&rest).is_some_and(|v| spent + c.index + v == total)
        })?;
        spent += cands[next].index;
        uncovered = CoverCost::minus(&uncovered, &cands[next]);
        chosen.push(next);
    }
    Some((total, chosen))
}

pub fn minimal_degree(g: &Arc<FiniteGroup>) -> Result<MuCertificate> {
    let l = lattice::lattice(g)?;
    minimal_degree_with(g, &l)
}

pub fn minimal_degree_with(g: &Arc<FiniteGroup>, l: &LatticeIndex) -> Result<MuCertificate> {
    if g.order() == 1 {
        return Ok(MuCertificate {
            group: g.name().to_string(),
            degree: 0,
            family: vec![],
            family_ids: vec![],
            orbit_sizes: vec![],
            permutation_generators: build_permutation_rep(g, &[])?,
        });
    }
    let universe = lattice::socle_minimal_normals(g).len();
    let cands = coverage_map(g, l);
    let keys = cands.iter().map(|c| l.get(c.subgroup).bits()).collect();
    let (degree, picked) = solve_cover(universe, &cands, keys)
        .expect("the trivial subgroup covers every minimal normal subgroup");
    let mut ids: Vec<usize> = picked.iter().map(|&i| cands[i].subgroup).collect();
    ids.sort_by(|&a, &b| l.get(a).bits().cmp(l.get(b).bits()));
    let family: Vec<Subgroup> = ids.iter().map(|&i| l.get(i).clone()).collect();
    let orbit_sizes = family.iter().map(|h| g.order() / h.order()).collect();
    let permutation_generators = build_permutation_rep(g, &family)?;
    Ok(MuCertificate {
        group: g.name().to_string(),
        degree,
        family,
        family_ids: ids,
        orbit_sizes,
        permutation_generators,
    })
}

/// Right cosets of `h`: coset id of each element, numbered by their
/// smallest member.
fn coset_ids(g: &FiniteGroup, h: &Subgroup) -> (Vec<usize>, Vec<Elem>) {
    let mut id = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    let members: Vec<Elem> = h.elements().collect();
    for x in g.elements() {
        if id[x] != usize::MAX {
            continue;
        }
        for &m in &members {
            id[g.mul(m, x)] = reps.len();
        }
        reps.push(x);
    }
    (id, reps)
}

/// Permutation of every element on the disjoint union of coset spaces,
/// `Hx -> Hxg`.
fn coset_action(g: &FiniteGroup, family: &[Subgroup]) -> (usize, Vec<Permutation>) {
    let spaces: Vec<(Vec<usize>, Vec<Elem>)> = family.iter().map(|h| coset_ids(g, h)).collect();
    let degree: usize = spaces.iter().map(|(_, r)| r.len()).sum();
    let perms = g
        .elements()
        .map(|x| {
            let mut images = Vec::with_capacity(degree);
            let mut offset = 0;
            for (id, reps) in &spaces {
                for &r in reps {
                    images.push((offset + id[g.mul(r, x)]) as u32);
                }
                offset += reps.len();
            }
            Permutation { images }
        })
        .collect();
    (degree, perms)
}

/// Kernel of the action on the cosets of the family, computed directly.
pub fn action_kernel(g: &FiniteGroup, family: &[Subgroup]) -> Subgroup {
    let (_, perms) = coset_action(g, family);
    let ker: Vec<Elem> = g.elements().filter(|&x| perms[x].is_identity()).collect();
    g.subgroup(&ker)
}

/// Generator permutations of the coset action of `family`.
pub fn build_permutation_rep(g: &FiniteGroup, family: &[Subgroup]) -> Result<Vec<(String, Permutation)>> {
    let (_, perms) = coset_action(g, family);
    let kernel_order = perms.iter().filter(|p| p.is_identity()).count();
    if kernel_order > 1 {
        return Err(Error::NotFaithful { kernel_order });
    }
    Ok(g
        .generator_names()
        .iter()
        .zip(g.generators())
        .map(|(n, &x)| (n.clone(), perms[x].clone()))
        .collect())
}

/// Checks a certificate independently of the solver: the coset action is a
/// homomorphism with trivial kernel and the degree is the index sum.
pub fn check_certificate(g: &FiniteGroup, cert: &MuCertificate) -> bool {
    let (degree, perms) = coset_action(g, &cert.family);
    if degree != cert.degree || cert.orbit_sizes.iter().sum::<usize>() != degree {
        return false;
    }
    let hom = g
        .elements()
        .all(|a| g.generators().iter().all(|&b| perms[a].then(&perms[b]) == perms[g.mul(a, b)]));
    let faithful = perms.iter().filter(|p| p.is_identity()).count() == 1;
    let gens_match = cert
        .permutation_generators
        .iter()
        .zip(g.generators())
        .all(|((_, p), &x)| *p == perms[x]);
    hom && faithful && gens_match
}

/// Result of the exhaustive cross-check search.
#[derive(Clone, Debug)]
pub struct NaiveOracleResult {
    pub degree: usize,
    /// Lattice ids.
    pub family: Vec<usize>,
}

/// Largest group order the exhaustive oracle accepts.
pub const ORACLE_BOUND: usize = 81;

/// Intersection of all conjugates, without the generator shortcut.
fn core_by_all_conjugates(g: &FiniteGroup, h: &Subgroup) -> Bitset {
    let mut k = h.bits().clone();
    for x in g.elements() {
        let xi = g.inv(x);
        let conj = Bitset::from_indices(g.order(), h.elements().map(|s| g.mul(g.mul(xi, s), x)));
        k.intersect_with(&conj);
    }
    k
}

/// Minimal degree by exhaustive search over families of subgroups, checking
/// that the cores intersect trivially. Families have at most
/// `rank(Z(G)) + 1` members; a member whose core already contains the
/// running intersection is skipped since it can be dropped from any family.
pub fn mu_bruteforce_oracle(g: &FiniteGroup) -> Result<NaiveOracleResult> {
    if g.order() > ORACLE_BOUND {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound: ORACLE_BOUND,
        });
    }
    if g.order() == 1 {
        return Ok(NaiveOracleResult { degree: 0, family: vec![] });
    }
    let l = lattice::lattice(g)?;
    let max_size = lattice::center_rank(g) + 1;
    let mut subs: Vec<(usize, usize, Bitset)> = l
        .subgroups()
        .iter()
        .enumerate()
        .filter(|(_, h)| h.order() < g.order())
        .map(|(i, h)| (g.order() / h.order(), i, core_by_all_conjugates(g, h)))
        .collect();
    subs.sort_by_key(|s| (s.0, s.1));

    struct St<'a> {
        subs: &'a [(usize, usize, Bitset)],
        max_size: usize,
        best: usize,
        best_family: Vec<usize>,
    }
    fn go(st: &mut St, start: usize, inter: &Bitset, cost: usize, chosen: &mut Vec<usize>) {
        if inter.count() == 1 {
            if cost < st.best {
                st.best = cost;
                st.best_family = chosen.clone();
            }
            return;
        }
        if chosen.len() == st.max_size {
            return;
        }
        for i in start..st.subs.len() {
            let (idx, id, ref core) = st.subs[i];
            if cost + idx >= st.best {
                break;
            }
            let next = inter.intersection(core);
            if next == *inter {
                continue;
            }
            chosen.push(id);
            go(st, i + 1, &next, cost + idx, chosen);
            chosen.pop();
        }
    }
    let mut st = St {
        subs: &subs,
        max_size,
        best: usize::MAX,
        best_family: vec![],
    };
    go(&mut st, 0, &Bitset::full(g.order()), 0, &mut Vec::new());
    Ok(NaiveOracleResult {
        degree: st.best,
        family: st.best_family,
    })
}

/// Sizes of every family of proper subgroups with trivial core
/// intersection and total index `mu(G)`, by exhaustive search.
pub fn optimal_family_sizes(g: &FiniteGroup) -> Result<std::collections::BTreeSet<usize>> {
    if g.order() > ORACLE_BOUND {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound: ORACLE_BOUND,
        });
    }
    let mut sizes = std::collections::BTreeSet::new();
    if g.order() == 1 {
        sizes.insert(0);
        return Ok(sizes);
    }
    let mu = mu_bruteforce_oracle(g)?.degree;
    let l = lattice::lattice(g)?;
    let subs: Vec<(usize, Bitset)> = l
        .subgroups()
        .iter()
        .filter(|h| h.order() < g.order() && g.order() / h.order() <= mu)
        .map(|h| (g.order() / h.order(), core_by_all_conjugates(g, h)))
        .collect();
    fn go(
        subs: &[(usize, Bitset)],
        start: usize,
        inter: &Bitset,
        left: usize,
        len: usize,
        sizes: &mut std::collections::BTreeSet<usize>,
    ) {
        if left == 0 {
            if inter.count() == 1 {
                sizes.insert(len);
            }
            return;
        }
        for i in start..subs.len() {
            let (idx, ref core) = subs[i];
            if idx <= left {
                go(subs, i + 1, &inter.intersection(core), left - idx, len + 1, sizes);
            }
        }
    }
    go(&subs, 0, &Bitset::full(g.order()), mu, 0, &mut sizes);
    Ok(sizes)
}

/// Sum of the cyclic invariant factors of an abelian group.
pub fn mu_abelian_crosscheck(g: &FiniteGroup) -> Result<usize> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    Ok(lattice::abelian_invariants(g, &g.whole())?.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_pc_group;
    use crate::pc::PcPresentation;

    fn group(pres: PcPresentation) -> Arc<FiniteGroup> {
        build_pc_group(pres).unwrap()
    }

    #[test]
    fn permutation_cycle_notation() {
        let p = Permutation::from_images(vec![1, 2, 0, 3, 5, 4]);
        assert_eq!(p.to_string(), "(1 2 3)(5 6)");
        assert_eq!(Permutation::parse_cycles("(1 2 3)(5 6)", 6).unwrap(), p);
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert!(Permutation::parse_cycles("(1 9)", 6).is_err());
        assert!(Permutation::parse_cycles("1 2", 6).is_err());
    }

    #[test]
    fn trivial_group_has_degree_zero() {
        let g = group(PcPresentation::new(3, Vec::<String>::new()));
        let cert = minimal_degree(&g).unwrap();
        assert_eq!(cert.degree, 0);
        assert!(cert.family.is_empty());
        assert_eq!(mu_bruteforce_oracle(&g).unwrap().degree, 0);
    }

    #[test]
    fn regular_rep_of_z3() {
        let g = group(PcPresentation::new(3, ["a"]));
        let gens = build_permutation_rep(&g, &[g.trivial_subgroup()]).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].1.to_string(), "(1 2 3)");
        assert_eq!(minimal_degree(&g).unwrap().degree, 3);
    }

    #[test]
    fn plane_coverage_columns() {
        let g = group(PcPresentation::new(3, ["a", "b"]));
        let l = lattice::lattice(&g).unwrap();
        let cands = coverage_map(&g, &l);
        let index3: Vec<_> = cands.iter().filter(|c| c.index == 3).collect();
        assert_eq!(index3.len(), 4);
        assert!(index3.iter().all(|c| c.covered.count() == 3));
        // only the regular orbit covers everything at once
        let full: Vec<_> = cands.iter().filter(|c| c.covered.count() == 4).collect();
        assert_eq!(full.len(), 1);
        assert_eq!(full[0].index, 9);
        assert_eq!(cands.len(), 5);
        let cert = minimal_degree(&g).unwrap();
        assert_eq!(cert.degree, 6);
        assert_eq!(cert.orbit_sizes, vec![3, 3]);
        assert!(check_certificate(&g, &cert));
    }

    #[test]
    fn quaternion_needs_regular_orbit() {
        let g = group(
            PcPresentation::new(2, ["i", "j", "z"])
                .power("i", "z")
                .unwrap()
                .power("j", "z")
                .unwrap()
                .comm("j", "i", "z")
                .unwrap(),
        );
        let l = lattice::lattice(&g).unwrap();
        let cands = coverage_map(&g, &l);
        assert_eq!(cands.len(), 1);
        assert_eq!(cands[0].index, 8);
        assert!(l.get(cands[0].subgroup).is_trivial());
    }

    #[test]
    fn unfaithful_family_rejected() {
        let g = group(PcPresentation::new(3, ["a", "b"]));
        let h = g.subgroup_of_words(&["a"]).unwrap();
        assert!(matches!(
            build_permutation_rep(&g, std::slice::from_ref(&h)),
            Err(Error::NotFaithful { kernel_order: 3 })
        ));
        assert_eq!(action_kernel(&g, &[h]).order(), 3);
    }

    #[test]
    fn abelian_crosscheck() {
        let z9z3 = group(PcPresentation::new(3, ["a", "b", "c"]).power("a", "b").unwrap());
        assert_eq!(mu_abelian_crosscheck(&z9z3).unwrap(), 12);
        assert_eq!(minimal_degree(&z9z3).unwrap().degree, 12);
        let heis = group(PcPresentation::new(3, ["x", "y", "z"]).comm("y", "x", "z^2").unwrap());
        assert!(matches!(mu_abelian_crosscheck(&heis), Err(Error::NotAbelian)));
    }

    #[test]
    fn set_cover_prefers_cheaper_family() {
        let mk = |index, bits: &[usize]| CoverCandidate {
            subgroup: 0,
            index,
            covered: Bitset::from_indices(3, bits.iter().copied()),
        };
        let cands = vec![mk(2, &[0]), mk(2, &[1]), mk(2, &[2]), mk(5, &[0, 1, 2])];
        let keys_store: Vec<Bitset> = (0..4).map(|i| Bitset::from_indices(4, [i])).collect();
        let keys = keys_store.iter().collect();
        let (cost, fam) = solve_cover(3, &cands, keys).unwrap();
        assert_eq!(cost, 5);
        assert_eq!(fam, vec![3]);
    }

    #[test]
    fn set_cover_matches_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let universe = rng.gen_range(1..6);
            let n = rng.gen_range(1..8);
            let cands: Vec<CoverCandidate> = (0..n)
                .map(|i| CoverCandidate {
                    subgroup: i,
                    index: rng.gen_range(1..5),
                    covered: Bitset::from_indices(universe, (0..universe).filter(|_| rng.gen_bool(0.4))),
                })
                .collect();
            // keys in reverse so the tie-break is not the column order
            let keys_store: Vec<Bitset> = (0..n).map(|i| Bitset::from_indices(n, [n - 1 - i])).collect();
            let key_of = |fam: &[usize]| {
                let mut k: Vec<&Bitset> = fam.iter().map(|&i| &keys_store[i]).collect();
                k.sort();
                k
            };
            let mut best: Option<(usize, Vec<usize>)> = None;
            for mask in 1u32..(1 << n) {
                let fam: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let covers = (0..universe).all(|e| fam.iter().any(|&i| cands[i].covered.contains(e)));
                let cost: usize = fam.iter().map(|&i| cands[i].index).sum();
                let better = match &best {
                    None => true,
                    Some((bc, bf)) => cost < *bc || (cost == *bc && key_of(&fam) < key_of(bf)),
                };
                if covers && better {
                    best = Some((cost, fam));
                }
            }
            let got = solve_cover(universe, &cands, keys_store.iter().collect());
            match (best, got) {
                (None, None) => {}
                (Some((bc, bf)), Some((gc, gf))) => {
                    assert_eq!(gc, bc);
                    assert_eq!(key_of(&gf), key_of(&bf));
                }
                (b, g) => panic!("brute force {b:?}, solver {g:?}"),
            }
        }
    }
}
