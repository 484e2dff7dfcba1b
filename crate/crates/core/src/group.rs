//! Finite p-groups with a full multiplication table.
//!
//! Every group is backed by a pc presentation, a quotient of another group,
//! or a direct product, and is immutable once built. Elements are indices
//! `0..order` with `0` the identity:
//!
//! * pc-backed: the mixed-radix rank of the normal form;
//! * quotient: position of the canonical coset representative (the
//!   minimal parent index in its coset) among all representatives;
//! * product: `left * |right| + right`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use sha2::{Digest, Sha256};

use crate::bitset::Bitset;
use crate::error::{Error, Result};
use crate::hom::Homomorphism;
use crate::lattice::{LatticeIndex, Subgroup};
use crate::pc::{checked_table, GroupElement, PcPresentation, TABLE_LIMIT};
use crate::word::{Relation, Word};

pub type Elem = usize;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub enum Backing {
    Pc(PcPresentation),
    Quotient {
        parent: Arc<FiniteGroup>,
        kernel: Bitset,
        /// Parent index of each quotient element's representative.
        reps: Vec<Elem>,
        /// Quotient element of each parent element.
        coset_of: Vec<Elem>,
    },
    Product {
        left: Arc<FiniteGroup>,
        right: Arc<FiniteGroup>,
    },
}

pub struct FiniteGroup {
    id: u64,
    name: String,
    prime: u32,
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    gens: Vec<Elem>,
    gen_names: Vec<String>,
    labels: BTreeMap<String, Elem>,
    backing: Backing,
    pub(crate) lattice_cache: OnceLock<Arc<LatticeIndex>>,
    center_cache: OnceLock<Subgroup>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("prime", &self.prime)
            .field("order", &self.order)
            .field("generators", &self.gen_names)
            .finish()
    }
}

/// Validates `pres` and builds its group.
pub fn build_pc_group(pres: PcPresentation) -> Result<Arc<FiniteGroup>> {
    build_pc_group_named(pres, None)
}

pub fn build_pc_group_named(pres: PcPresentation, name: Option<String>) -> Result<Arc<FiniteGroup>> {
    pres.validate()?;
    if pres.order() > TABLE_LIMIT {
        return Err(Error::BoundExceeded {
            order: pres.order(),
            bound: TABLE_LIMIT,
        });
    }
    let table = checked_table(&pres).map_err(|w| Error::InconsistentPresentation(w.to_string()))?;
    let n = pres.ngens();
    let p = pres.prime();
    let gens: Vec<Elem> = (0..n).map(|i| GroupElement::unit(n, i).rank(p)).collect();
    let gen_names = pres.names().to_vec();
    let labels = gen_names.iter().cloned().zip(gens.iter().copied()).collect();
    let name = name.unwrap_or_else(|| format!("pc({})", gen_names.join(",")));
    Ok(Arc::new(FiniteGroup::assemble(
        name,
        p,
        table,
        gens,
        gen_names,
        labels,
        Backing::Pc(pres),
    )))
}

/// `G/N` together with the natural map `G -> G/N`.
pub fn quotient_group(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(Arc<FiniteGroup>, Homomorphism)> {
    if !crate::lattice::is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let order = g.order();
    let mut coset_of = vec![usize::MAX; order];
    let mut reps = Vec::new();
    let members: Vec<Elem> = n.elements().collect();
    for x in 0..order {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in &members {
            coset_of[g.mul(x, m)] = c;
        }
    }
    let q = reps.len();
    let mut table = vec![0u16; q * q];
    for i in 0..q {
        for j in 0..q {
            table[i * q + j] = coset_of[g.mul(reps[i], reps[j])] as u16;
        }
    }
    let gens: Vec<Elem> = g.gens.iter().map(|&x| coset_of[x]).collect();
    let labels = g.labels.iter().map(|(k, &v)| (k.clone(), coset_of[v])).collect();
    let name = format!("{}/<{}>", g.name, g.format_gens(n.gens()));
    let quotient = Arc::new(FiniteGroup::assemble(
        name,
        g.prime,
        table,
        gens.clone(),
        g.gen_names.clone(),
        labels,
        Backing::Quotient {
            parent: g.clone(),
            kernel: n.bits().clone(),
            reps,
            coset_of,
        },
    ));
    let map = Homomorphism::new(g.clone(), quotient.clone(), gens);
    Ok((quotient, map))
}

pub fn direct_product(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<Arc<FiniteGroup>> {
    if a.prime != b.prime {
        return Err(Error::PrimeMismatch(a.prime, b.prime));
    }
    let (na, nb) = (a.order(), b.order());
    let order = na * nb;
    if order > TABLE_LIMIT {
        return Err(Error::BoundExceeded {
            order,
            bound: TABLE_LIMIT,
        });
    }
    let mut table = vec![0u16; order * order];
    for x in 0..order {
        let (xa, xb) = (x / nb, x % nb);
        for y in 0..order {
            let (ya, yb) = (y / nb, y % nb);
            table[x * order + y] = (a.mul(xa, ya) * nb + b.mul(xb, yb)) as u16;
        }
    }
    let mut gens: Vec<Elem> = a.gens.iter().map(|&x| x * nb).collect();
    gens.extend(b.gens.iter().copied());
    let mut taken: std::collections::BTreeSet<String> = a.gen_names.iter().cloned().collect();
    taken.extend(a.labels.keys().cloned());
    let mut rename = BTreeMap::new();
    for name in b.gen_names.iter().chain(b.labels.keys()) {
        if rename.contains_key(name) {
            continue;
        }
        let mut fresh = name.clone();
        while taken.contains(&fresh) {
            fresh.push('\'');
        }
        taken.insert(fresh.clone());
        rename.insert(name.clone(), fresh);
    }
    let mut gen_names = a.gen_names.clone();
    gen_names.extend(b.gen_names.iter().map(|n| rename[n].clone()));
    let mut labels: BTreeMap<String, Elem> = a.labels.iter().map(|(k, &v)| (k.clone(), v * nb)).collect();
    labels.extend(b.labels.iter().map(|(k, &v)| (rename[k].clone(), v)));
    Ok(Arc::new(FiniteGroup::assemble(
        format!("{} x {}", a.name, b.name),
        a.prime,
        table,
        gens,
        gen_names,
        labels,
        Backing::Product {
            left: a.clone(),
            right: b.clone(),
        },
    )))
}

/// Projections of a product group onto its factors.
pub fn projections(prod: &Arc<FiniteGroup>) -> Option<(Homomorphism, Homomorphism)> {
    let Backing::Product { left, right } = &prod.backing else {
        return None;
    };
    let nb = right.order();
    let imgs_l = prod.gens.iter().map(|&x| x / nb).collect();
    let imgs_r = prod.gens.iter().map(|&x| x % nb).collect();
    Some((
        Homomorphism::new(prod.clone(), left.clone(), imgs_l),
        Homomorphism::new(prod.clone(), right.clone(), imgs_r),
    ))
}

impl FiniteGroup {
    fn assemble(
        name: String,
        prime: u32,
        table: Vec<u16>,
        gens: Vec<Elem>,
        gen_names: Vec<String>,
        labels: BTreeMap<String, Elem>,
        backing: Backing,
    ) -> FiniteGroup {
        let order = (table.len() as f64).sqrt().round() as usize;
        debug_assert_eq!(order * order, table.len());
        let mut inverse = vec![0u16; order];
        for x in 0..order {
            let row = &table[x * order..(x + 1) * order];
            let y = row.iter().position(|&v| v == 0).expect("group table row without identity");
            inverse[x] = y as u16;
        }
        FiniteGroup {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            prime,
            order,
            table,
            inverse,
            gens,
            gen_names,
            labels,
            backing,
            lattice_cache: OnceLock::new(),
            center_cache: OnceLock::new(),
        }
    }

    /// Copy of this group under a different display name, sharing nothing
    /// cached.
    pub fn renamed(self: &Arc<Self>, name: impl Into<String>) -> Arc<FiniteGroup> {
        self.relabeled(name, BTreeMap::new())
    }

    /// Copy with extra labels (catalog letters, derived elements).
    pub fn relabeled(self: &Arc<Self>, name: impl Into<String>, extra: BTreeMap<String, Elem>) -> Arc<FiniteGroup> {
        let mut labels = self.labels.clone();
        labels.extend(extra);
        let backing = match &self.backing {
            Backing::Pc(p) => Backing::Pc(p.clone()),
            Backing::Quotient {
                parent,
                kernel,
                reps,
                coset_of,
            } => Backing::Quotient {
                parent: parent.clone(),
                kernel: kernel.clone(),
                reps: reps.clone(),
                coset_of: coset_of.clone(),
            },
            Backing::Product { left, right } => Backing::Product {
                left: left.clone(),
                right: right.clone(),
            },
        };
        Arc::new(FiniteGroup::assemble(
            name.into(),
            self.prime,
            self.table.clone(),
            self.gens.clone(),
            self.gen_names.clone(),
            labels,
            backing,
        ))
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn prime(&self) -> u32 {
        self.prime
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn pc_presentation(&self) -> Option<&PcPresentation> {
        match &self.backing {
            Backing::Pc(p) => Some(p),
            _ => None,
        }
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as Elem
    }

    pub fn pow(&self, a: Elem, k: i64) -> Elem {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    /// `b^-1 a b`.
    #[inline]
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `a^-1 b^-1 a b`.
    #[inline]
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Elements in canonical order.
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn labels(&self) -> &BTreeMap<String, Elem> {
        &self.labels
    }

    pub fn label(&self, name: &str) -> Option<Elem> {
        self.labels.get(name).copied()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.elements().map(|a| self.element_order(a)).max().unwrap_or(1)
    }

    /// Evaluates a word in this group's labels.
    pub fn eval(&self, word: &str) -> Result<Elem> {
        self.eval_word(&Word::parse(word)?)
    }

    pub fn eval_word(&self, word: &Word) -> Result<Elem> {
        word.eval(
            &|s| self.label(s),
            0,
            &|a, b| self.mul(a, b),
            &|a| self.inv(a),
        )
    }

    /// Whether `lhs = rhs` holds in this group.
    pub fn satisfies(&self, rel: &Relation) -> Result<bool> {
        Ok(self.eval_word(&rel.lhs)? == self.eval_word(&rel.rhs)?)
    }

    /// Exponent vector of a pc-backed element.
    pub fn pc_element(&self, a: Elem) -> Option<GroupElement> {
        self.pc_presentation()
            .map(|p| GroupElement::unrank(a, p.prime(), p.ngens()))
    }

    pub fn format_element(&self, a: Elem) -> String {
        match &self.backing {
            Backing::Pc(p) => GroupElement::unrank(a, p.prime(), p.ngens()).format(p.names()),
            Backing::Quotient { parent, reps, .. } => parent.format_element(reps[a]),
            Backing::Product { left, right } => {
                let nb = right.order();
                format!(
                    "({}, {})",
                    left.format_element(a / nb),
                    right.format_element(a % nb)
                )
            }
        }
    }

    pub fn format_gens(&self, gens: &[Elem]) -> String {
        if gens.is_empty() {
            return "1".into();
        }
        gens.iter()
            .map(|&g| self.format_element(g))
            .collect::<Vec<_>>()
            .join(", ")
    }

    /// Stable content hash of the prime and multiplication table.
    pub fn table_hash(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.prime.to_le_bytes());
        h.update((self.order as u64).to_le_bytes());
        for v in &self.table {
            h.update(v.to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn center(&self) -> &Subgroup {
        self.center_cache.get_or_init(|| crate::lattice::compute_center(self))
    }

    /// Subgroup generated by `elems`.
    pub fn subgroup(&self, elems: &[Elem]) -> Subgroup {
        Subgroup::generated(self, elems)
    }

    /// Subgroup generated by label words, e.g. `["x^3", "n"]`.
    pub fn subgroup_of_words(&self, words: &[&str]) -> Result<Subgroup> {
        let elems = words.iter().map(|w| self.eval(w)).collect::<Result<Vec<_>>>()?;
        Ok(self.subgroup(&elems))
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup(&[])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::generated(self, &self.gens)
    }
}

/// Pc presentation of a subgroup, read off a central series.
///
/// Builds `1 = K_0 < K_1 < ... < K_m = S` by repeatedly adjoining the
/// smallest element of `S` that is central of order `p` modulo the current
/// term; the reversed sequence of adjoined elements is a pc sequence.
/// Returns the presentation and the element of `g` for each pc rank.
pub fn derive_pc_presentation(g: &FiniteGroup, s: &Subgroup) -> (PcPresentation, Vec<Elem>) {
    let p = g.prime;
    let order = g.order();
    let s_gens = s.gens().to_vec();
    let mut terms = vec![Bitset::from_indices(order, [0])];
    let mut chain: Vec<Elem> = Vec::new();
    while terms.last().unwrap().count() < s.order() {
        let k = terms.last().unwrap();
        let z = s
            .elements()
            .find(|&z| {
                !k.contains(z)
                    && k.contains(g.pow(z, p as i64))
                    && s_gens.iter().all(|&t| k.contains(g.comm(z, t)))
            })
            .expect("p-group quotient has nontrivial center");
        let mut next = k.clone();
        let members: Vec<Elem> = k.iter().collect();
        let mut zi = z;
        for _ in 1..p {
            for &m in &members {
                next.insert(g.mul(zi, m));
            }
            zi = g.mul(zi, z);
        }
        chain.push(z);
        terms.push(next);
    }
    chain.reverse();
    let m = chain.len();
    // series[i] = <a_{i+1}, ..., a_m>
    let series: Vec<Bitset> = (0..=m).map(|i| terms[m - i].clone()).collect();
    let express = |mut x: Elem| -> Vec<u32> {
        let mut exps = vec![0u32; m];
        for i in 0..m {
            let ainv = g.inv(chain[i]);
            let mut e = 0;
            while !series[i + 1].contains(x) {
                x = g.mul(ainv, x);
                e += 1;
                debug_assert!(e < p);
            }
            exps[i] = e;
        }
        exps
    };
    let names: Vec<String> = (1..=m).map(|i| format!("g{i}")).collect();
    let mut pres = PcPresentation::new(p, names);
    for i in 0..m {
        pres.set_power(i, express(g.pow(chain[i], p as i64)));
        for j in i + 1..m {
            let c = express(g.comm(chain[j], chain[i]));
            if c.iter().any(|&e| e != 0) {
                pres.set_commutator(j, i, c);
            }
        }
    }
    let elems = (0..s.order())
        .map(|r| {
            let e = GroupElement::unrank(r, p, m);
            e.exponents
                .iter()
                .zip(&chain)
                .fold(0, |acc, (&k, &a)| g.mul(acc, g.pow(a, k as i64)))
        })
        .collect();
    (pres, elems)
}

/// A subgroup as a group in its own right, via a derived pc presentation.
pub fn subgroup_as_group(g: &FiniteGroup, s: &Subgroup) -> Result<Arc<FiniteGroup>> {
    let (pres, _) = derive_pc_presentation(g, s);
    build_pc_group_named(pres, Some(format!("<{}> in {}", g.format_gens(s.gens()), g.name())))
}
