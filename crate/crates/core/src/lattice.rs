//! Subgroup lattices of p-groups by cyclic extension, plus the usual
//! subgroup operators: center, socle, normalizer, core, normal closure.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::group::{Backing, Elem, FiniteGroup};

/// Default refusal threshold for lattice construction (5^5).
pub const DEFAULT_BOUND: usize = 3125;

/// A subgroup of an ambient group, as a bitset over element indices.
#[derive(Clone, Debug)]
pub struct Subgroup {
    bits: Bitset,
    gens: Vec<Elem>,
    order: usize,
    ambient: u64,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.bits == other.bits
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Closure of `elems` under multiplication.
    pub fn generated(g: &FiniteGroup, elems: &[Elem]) -> Subgroup {
        Subgroup::from_bits(g, closure(g, elems))
    }

    /// Wraps a bitset already known to be a subgroup.
    pub(crate) fn from_bits(g: &FiniteGroup, bits: Bitset) -> Subgroup {
        let order = bits.count();
        let gens = echelon_gens(g, &bits);
        Subgroup {
            bits,
            gens,
            order,
            ambient: g.id(),
        }
    }

    pub fn bits(&self) -> &Bitset {
        &self.bits
    }

    /// Generating sequence. For pc-backed groups this is an induced pc
    /// sequence with strictly increasing depth.
    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn ambient_id(&self) -> u64 {
        self.ambient
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, g: &FiniteGroup, other: &Subgroup) -> Subgroup {
        Subgroup::from_bits(g, self.bits.intersection(&other.bits))
    }

    /// `H^x = x^-1 H x`.
    pub fn conjugate(&self, g: &FiniteGroup, x: Elem) -> Subgroup {
        Subgroup::from_bits(g, conjugate_bits(g, &self.bits, x))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }
}

fn closure(g: &FiniteGroup, gens: &[Elem]) -> Bitset {
    let gens: Vec<Elem> = gens.iter().copied().filter(|&e| e != 0).collect();
    let mut bits = Bitset::from_indices(g.order(), [0]);
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for &s in &gens {
            let y = g.mul(x, s);
            if bits.insert(y) {
                queue.push(y);
            }
        }
    }
    bits
}

fn conjugate_bits(g: &FiniteGroup, bits: &Bitset, x: Elem) -> Bitset {
    let xi = g.inv(x);
    Bitset::from_indices(bits.len(), bits.iter().map(|h| g.mul(g.mul(xi, h), x)))
}

fn echelon_gens(g: &FiniteGroup, bits: &Bitset) -> Vec<Elem> {
    if let Backing::Pc(pres) = g.backing() {
        let n = pres.ngens();
        let mut best: Vec<Option<Elem>> = vec![None; n];
        for x in bits.iter() {
            let e = g.pc_element(x).unwrap();
            if let Some(d) = e.depth() {
                if e.exponents[d] == 1 && best[d].is_none() {
                    best[d] = Some(x);
                }
            }
        }
        let gens: Vec<Elem> = best.into_iter().flatten().collect();
        debug_assert_eq!((g.prime() as usize).pow(gens.len() as u32), bits.count());
        return gens;
    }
    let mut gens = Vec::new();
    let mut span = Bitset::from_indices(g.order(), [0]);
    for x in bits.iter() {
        if !span.contains(x) {
            gens.push(x);
            span = closure(g, &gens);
        }
    }
    gens
}

pub(crate) fn compute_center(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let bits = Bitset::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| gens.iter().all(|&s| g.mul(x, s) == g.mul(s, x))),
    );
    Subgroup::from_bits(g, bits)
}

pub fn center(g: &FiniteGroup) -> Subgroup {
    g.center().clone()
}

/// The order-p subgroups of the center, i.e. the minimal normal subgroups.
pub fn socle_minimal_normals(g: &FiniteGroup) -> Vec<Subgroup> {
    let p = g.prime() as usize;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for z in g.center().elements() {
        if z != 0 && g.element_order(z) == p {
            let s = Subgroup::generated(g, &[z]);
            if seen.insert(s.bits.clone()) {
                out.push(s);
            }
        }
    }
    out.sort_by(|a, b| a.bits.cmp(&b.bits));
    out
}

pub fn is_normal(g: &FiniteGroup, h: &Subgroup) -> bool {
    g.generators()
        .iter()
        .all(|&x| h.gens.iter().all(|&s| h.contains(g.conj(s, x))))
}

/// An element `x` and generator `s` of `h` with `s^x` outside `h`.
pub fn normality_witness(g: &FiniteGroup, h: &Subgroup) -> Option<(Elem, Elem)> {
    for &x in g.generators() {
        for &s in &h.gens {
            if !h.contains(g.conj(s, x)) {
                return Some((s, x));
            }
        }
    }
    None
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let bits = Bitset::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| h.gens.iter().all(|&s| h.contains(g.conj(s, x)))),
    );
    Subgroup::from_bits(g, bits)
}

/// Largest normal subgroup of `g` inside `h`: intersect with conjugates by
/// the generators until stable.
pub fn core(g: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let mut k = h.bits.clone();
    loop {
        let mut changed = false;
        for &x in g.generators() {
            let next = k.intersection(&conjugate_bits(g, &k, x));
            if next != k {
                k = next;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Subgroup::from_bits(g, k)
}

pub fn normal_closure(g: &FiniteGroup, elems: &[Elem]) -> Subgroup {
    let mut gens: Vec<Elem> = elems.to_vec();
    let mut bits = closure(g, &gens);
    loop {
        let extra: Vec<Elem> = gens
            .iter()
            .flat_map(|&h| g.generators().iter().map(move |&x| (h, x)))
            .map(|(h, x)| g.conj(h, x))
            .filter(|&c| !bits.contains(c))
            .collect();
        if extra.is_empty() {
            return Subgroup::from_bits(g, bits);
        }
        gens.extend(extra);
        bits = closure(g, &gens);
    }
}

pub fn derived_subgroup(g: &FiniteGroup) -> Subgroup {
    let gens = g.generators();
    let comms: Vec<Elem> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.comm(a, b))
        .collect();
    normal_closure(g, &comms)
}

/// Cyclic factor orders of an abelian subgroup, largest first.
pub fn abelian_invariants(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<usize>> {
    if !h.is_abelian(g) {
        return Err(Error::NotAbelian);
    }
    let p = g.prime() as usize;
    // s[k] = log_p #{x in h : x^(p^k) = 1}
    let log_p = |mut v: usize| {
        let mut e = 0;
        while v > 1 {
            v /= p;
            e += 1;
        }
        e
    };
    let mut s = vec![0usize];
    let mut pk = 1usize;
    while *s.last().unwrap() < log_p(h.order()) {
        pk *= p;
        let count = h.elements().filter(|&x| g.pow(x, pk as i64) == 0).count();
        s.push(log_p(count));
    }
    let mut out = Vec::new();
    let kmax = s.len() - 1;
    for k in (1..=kmax).rev() {
        let at_least_k = s[k] - s[k - 1];
        let at_least_k1 = if k < kmax { s[k + 1] - s[k] } else { 0 };
        for _ in 0..at_least_k - at_least_k1 {
            out.push(p.pow(k as u32));
        }
    }
    Ok(out)
}

/// Minimal number of generators of the center.
pub fn center_rank(g: &FiniteGroup) -> usize {
    abelian_invariants(g, g.center()).map(|v| v.len()).unwrap_or(0)
}

/// Every subgroup of a group, with normality, conjugacy and core data.
pub struct LatticeIndex {
    subgroups: Vec<Subgroup>,
    by_order: BTreeMap<usize, Vec<usize>>,
    normal: Vec<bool>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    core_of: Vec<usize>,
    lookup: HashMap<Bitset, usize>,
}

impl LatticeIndex {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: usize) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn id_of(&self, h: &Subgroup) -> Option<usize> {
        self.lookup.get(&h.bits).copied()
    }

    pub fn by_order(&self) -> &BTreeMap<usize, Vec<usize>> {
        &self.by_order
    }

    pub fn of_order(&self, order: usize) -> &[usize] {
        self.by_order.get(&order).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_normal(&self, id: usize) -> bool {
        self.normal[id]
    }

    pub fn normal_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.normal[i])
    }

    /// Conjugacy classes of subgroups; the first member of each is its
    /// representative (smallest id).
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, id: usize) -> usize {
        self.class_of[id]
    }

    pub fn core_id(&self, id: usize) -> usize {
        self.core_of[id]
    }

    pub fn core(&self, id: usize) -> &Subgroup {
        &self.subgroups[self.core_of[id]]
    }

    pub fn trivial_id(&self) -> usize {
        0
    }

    pub fn whole_id(&self) -> usize {
        self.len() - 1
    }

    /// Rebuilds the index from a known list of subgroup bitsets.
    pub(crate) fn from_bitsets(g: &FiniteGroup, mut sets: Vec<Bitset>) -> LatticeIndex {
        sets.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
        sets.dedup();
        let subgroups: Vec<Subgroup> = sets.into_iter().map(|b| Subgroup::from_bits(g, b)).collect();
        let lookup: HashMap<Bitset, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits.clone(), i))
            .collect();
        let mut by_order: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, s) in subgroups.iter().enumerate() {
            by_order.entry(s.order).or_default().push(i);
        }

        // union-find over conjugation by generators
        let mut parent: Vec<usize> = (0..subgroups.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut normal = vec![true; subgroups.len()];
        for (i, s) in subgroups.iter().enumerate() {
            for &x in g.generators() {
                let c = conjugate_bits(g, &s.bits, x);
                if c != s.bits {
                    normal[i] = false;
                    let j = lookup[&c];
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        let (lo, hi) = (ri.min(rj), ri.max(rj));
                        parent[hi] = lo;
                    }
                }
            }
        }
        let mut class_of = vec![0; subgroups.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_idx: HashMap<usize, usize> = HashMap::new();
        for (i, slot) in class_of.iter_mut().enumerate() {
            let r = find(&mut parent, i);
            let c = *class_idx.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(i);
            *slot = c;
        }
        let mut core_of = vec![0; subgroups.len()];
        for members in &classes {
            let rep = &subgroups[members[0]];
            let k = core(g, rep);
            let kid = lookup[&k.bits];
            for &m in members {
                core_of[m] = kid;
            }
        }
        LatticeIndex {
            subgroups,
            by_order,
            normal,
            class_of,
            classes,
            core_of,
            lookup,
        }
    }
}

/// Full subgroup lattice by cyclic extension: every subgroup of order
/// `p^(k+1)` is `<U, x>` for some `U` of order `p^k` normal in it, with
/// `x` normalizing `U` and `x^p` in `U`.
pub fn all_subgroups(g: &FiniteGroup, bound: usize) -> Result<LatticeIndex> {
    if g.order() > bound {
        return Err(Error::BoundExceeded {
            order: g.order(),
            bound,
        });
    }
    let p = g.prime() as i64;
    let mut layer: Vec<Subgroup> = vec![Subgroup::from_bits(g, Bitset::from_indices(g.order(), [0]))];
    let mut all: Vec<Bitset> = vec![layer[0].bits.clone()];
    while layer[0].order < g.order() {
        let found: Vec<Vec<Bitset>> = layer
            .par_iter()
            .map(|u| {
                let norm = normalizer(g, u);
                let members: Vec<Elem> = u.elements().collect();
                let mut done = u.bits.clone();
                let mut out = Vec::new();
                for x in norm.elements() {
                    if done.contains(x) || !u.contains(g.pow(x, p)) {
                        continue;
                    }
                    let mut v = u.bits.clone();
                    let mut xi = x;
                    for _ in 1..p {
                        for &m in &members {
                            v.insert(g.mul(xi, m));
                        }
                        xi = g.mul(xi, x);
                    }
                    done.union_with(&v);
                    out.push(v);
                }
                out
            })
            .collect();
        let next: BTreeSet<Bitset> = found.into_iter().flatten().collect();
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        layer = next.into_iter().map(|b| Subgroup::from_bits(g, b)).collect();
    }
    Ok(LatticeIndex::from_bitsets(g, all))
}

/// Cached lattice under the default bound.
pub fn lattice(g: &FiniteGroup) -> Result<Arc<LatticeIndex>> {
    if let Some(l) = g.lattice_cache.get() {
        return Ok(l.clone());
    }
    let l = Arc::new(all_subgroups(g, DEFAULT_BOUND)?);
    Ok(g.lattice_cache.get_or_init(|| l).clone())
}

/// Installs a precomputed lattice (e.g. from the on-disk cache).
pub(crate) fn seed_lattice(g: &FiniteGroup, l: Arc<LatticeIndex>) -> Arc<LatticeIndex> {
    g.lattice_cache.get_or_init(|| l).clone()
}

pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    let l = lattice(g)?;
    Ok(l.normal_ids().map(|i| l.get(i).clone()).collect())
}

/// An abelian normal subgroup of the given order, if one exists.
pub fn has_abelian_normal_of_order(g: &FiniteGroup, order: usize) -> Result<Option<Subgroup>> {
    if order > g.order() || !g.order().is_multiple_of(order) {
        return Ok(None);
    }
    let l = lattice(g)?;
    Ok(l.of_order(order)
        .iter()
        .map(|&i| l.get(i))
        .find(|h| l.is_normal(l.id_of(h).unwrap()) && h.is_abelian(g))
        .cloned())
}

/// Whether `g` is not a direct product of two nontrivial normal subgroups.
pub fn is_directly_indecomposable(g: &FiniteGroup) -> Result<bool> {
    let normals = normal_subgroups(g)?;
    for a in &normals {
        if a.is_trivial() || a.order() == g.order() {
            continue;
        }
        for b in &normals {
            if a.order() * b.order() == g.order() && a.bits.intersection(&b.bits).count() == 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
