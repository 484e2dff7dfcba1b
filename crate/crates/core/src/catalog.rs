//! Named groups: the four order-p^4 quotients, their order-p^5 central
//! extensions, the order-p^3 groups, the order-32 examples, and cyclic and
//! elementary abelian helpers.
//!
//! Each entry stores a hand-derived pc presentation together with the
//! defining relations in the original letters. Building an entry checks
//! consistency and order, then re-evaluates every relation inside the
//! constructed group and checks that the letters generate it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{build_pc_group_named, direct_product, FiniteGroup};
use crate::pc::{is_prime, PcPresentation};
use crate::word::Relation;

/// Where an expected minimal degree comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuSource {
    /// Stated outright for this group.
    Stated,
    /// Attributed to an external table; must be confirmed by computation.
    DerivedExpected,
    Trivial,
}

impl fmt::Display for MuSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MuSource::Stated => "stated",
            MuSource::DerivedExpected => "derived-expected",
            MuSource::Trivial => "trivial",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedMu {
    pub value: usize,
    pub source: MuSource,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub prime: u32,
    pub pc_presentation: PcPresentation,
    /// Letters of the original presentation; they must generate the group.
    pub letters: Vec<String>,
    pub paper_relations: Vec<String>,
    pub expected_order: usize,
    pub expected_mu: Option<ExpectedMu>,
}

impl CatalogEntry {
    pub fn spec_ref(&self) -> String {
        format!("{}@p={}", self.name, self.prime)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AuditResult {
    Pass,
    Fail { relation: String },
}

impl AuditResult {
    pub fn passed(&self) -> bool {
        matches!(self, AuditResult::Pass)
    }
}

/// Smallest positive quadratic non-residue mod `p`.
pub fn smallest_nonresidue(p: u32) -> u32 {
    let squares: Vec<u32> = (1..p).map(|a| a * a % p).collect();
    (1..p).find(|a| !squares.contains(a)).expect("odd prime has a non-residue")
}

fn subst(template: &str, p: u32, alpha: u32) -> String {
    template
        .replace("{p2}", &(p * p).to_string())
        .replace("{ap}", &(alpha * p).to_string())
        .replace("{p}", &p.to_string())
}

fn mk(
    name: &str,
    prime: u32,
    pres: Result<PcPresentation>,
    letters: &[&str],
    relations: &[&str],
    expected_mu: Option<ExpectedMu>,
) -> Result<CatalogEntry> {
    let alpha = if prime > 2 { smallest_nonresidue(prime) } else { 1 };
    let pres = pres?;
    Ok(CatalogEntry {
        name: name.to_string(),
        prime,
        expected_order: pres.order(),
        pc_presentation: pres,
        letters: letters.iter().map(|s| s.to_string()).collect(),
        paper_relations: relations.iter().map(|r| subst(r, prime, alpha)).collect(),
        expected_mu,
    })
}

fn neg(e: u32, p: u32) -> String {
    ((p - e % p) % p).to_string()
}

/// Splits `Zn(9)` into `("Zn", Some(9))`.
fn split_param(name: &str) -> Result<(&str, Option<usize>)> {
    match name.split_once('(') {
        Some((base, rest)) => {
            let arg = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownName(name.to_string()))?;
            let v = arg
                .trim()
                .parse::<usize>()
                .map_err(|_| Error::UnknownName(name.to_string()))?;
            Ok((base, Some(v)))
        }
        None => Ok((name, None)),
    }
}

pub fn catalog_entry(name: &str, p: u32) -> Result<CatalogEntry> {
    let bad_prime = || Error::BadPrime {
        name: name.to_string(),
        prime: p,
    };
    if !is_prime(p) {
        return Err(bad_prime());
    }
    let (base, param) = split_param(name)?;
    let odd = p > 2;
    let m1 = neg(1, p);
    let stated = |value| Some(ExpectedMu { value, source: MuSource::Stated });
    let table = |value| Some(ExpectedMu { value, source: MuSource::DerivedExpected });
    let trivial = |value| Some(ExpectedMu { value, source: MuSource::Trivial });
    let pp = (p * p) as usize;
    let p3 = pp * p as usize;
    match (base, param) {
        ("Zn", Some(k)) => {
            let mut m = 0usize;
            let mut v = 1usize;
            while v < k {
                v *= p as usize;
                m += 1;
            }
            if v != k {
                return Err(bad_prime());
            }
            let names: Vec<String> = (0..m).map(|i| format!("a{i}")).collect();
            let mut pres = PcPresentation::new(p, names.clone());
            for i in 0..m.saturating_sub(1) {
                pres = pres.power(&names[i], &names[i + 1])?;
            }
            let (letters, rels): (Vec<&str>, Vec<String>) = if m == 0 {
                (vec![], vec![])
            } else {
                (vec!["a0"], vec![format!("a0^{k}")])
            };
            let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
            mk(name, p, Ok(pres), &letters, &rels, trivial(if k == 1 { 0 } else { k }))
        }
        ("ElemAb", Some(k)) => {
            let names: Vec<String> = (1..=k).map(|i| format!("a{i}")).collect();
            let letters: Vec<&str> = names.iter().map(String::as_str).collect();
            let mut rels: Vec<String> = names.iter().map(|a| format!("{a}^{p}")).collect();
            for i in 0..k {
                for j in i + 1..k {
                    rels.push(format!("[{},{}]", names[i], names[j]));
                }
            }
            let rels: Vec<&str> = rels.iter().map(String::as_str).collect();
            mk(name, p, Ok(PcPresentation::new(p, names.clone())), &letters, &rels, trivial(k * p as usize))
        }
        ("Q8", None) if p == 2 => mk(
            name,
            p,
            PcPresentation::new(2, ["x", "y", "z"])
                .power("x", "z")
                .and_then(|q| q.power("y", "z"))
                .and_then(|q| q.comm("y", "x", "z")),
            &["x", "y"],
            &["x^4", "x^2 = y^2", "z = x^2", "y^-1 x y = x^-1"],
            trivial(8),
        ),
        ("D8", None) if p == 2 => mk(
            name,
            p,
            PcPresentation::new(2, ["x", "y", "c"])
                .power("x", "c")
                .and_then(|q| q.comm("y", "x", "c")),
            &["x", "y"],
            &["x^4", "y^2", "y^-1 x y = x^-1"],
            trivial(4),
        ),
        ("EP32_G", None) if p == 2 => mk(
            name,
            p,
            PcPresentation::new(2, ["x", "y", "c", "d", "e"])
                .power("x", "c")
                .and_then(|q| q.power("y", "d"))
                .and_then(|q| q.power("c", "e"))
                .and_then(|q| q.comm("y", "x", "c"))
                .and_then(|q| q.comm("c", "y", "e")),
            &["x", "y"],
            &["x^8", "y^4", "y^-1 x y = x^-1"],
            stated(12),
        ),
        ("EP32_H", None) if p == 2 => mk(
            name,
            p,
            PcPresentation::new(2, ["x", "y", "c", "e", "n"])
                .power("x", "c")
                .and_then(|q| q.power("y", "e"))
                .and_then(|q| q.power("c", "e"))
                .and_then(|q| q.comm("y", "x", "c n"))
                .and_then(|q| q.comm("c", "y", "e")),
            &["x", "y", "n"],
            &["x^8", "y^4", "n^2", "y^2 = x^4", "y^-1 x y = x^-1 n", "[n,x]", "[n,y]"],
            stated(12),
        ),
        ("L", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "y", "z"]).comm("y", "x", &format!("z^{m1}")),
            &["x", "y"],
            &["x^{p}", "y^{p}", "z^{p}", "[x,y] = z", "[x,z]", "[y,z]"],
            None,
        ),
        ("H", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "y", "c"])
                .power("x", "c")
                .and_then(|q| q.comm("y", "x", &format!("c^{m1}"))),
            &["x", "y"],
            &["x^{p2}", "y^{p}", "[x,y] = x^{p}"],
            None,
        ),
        ("G1", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "y", "z", "c"])
                .power("x", "c")
                .and_then(|q| q.comm("z", "y", &format!("c^{m1}"))),
            &["x", "y", "z"],
            &["x^{p2}", "y^{p}", "z^{p}", "[x,y]", "[x,z]", "[y,z] = x^{p}"],
            table(p3),
        ),
        ("G2", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "z", "y", "c"])
                .power("x", "c")
                .and_then(|q| q.power("z", "c"))
                .and_then(|q| q.comm("z", "x", &format!("y^{m1}")))
                .and_then(|q| q.comm("y", "x", &format!("c^{m1}"))),
            &["x", "y", "z"],
            &[
                "x^{p2}",
                "y^{p}",
                "z^{p2}",
                "z^{p} = x^{p}",
                "[x,y] = x^{p}",
                "[x,z] = y",
                "[y,z]",
            ],
            table(p3),
        ),
        ("G3", None) if odd => {
            let alpha = smallest_nonresidue(p);
            mk(
                name,
                p,
                PcPresentation::new(p, ["x", "z", "y", "c"])
                    .power("x", "c")
                    .and_then(|q| q.power("z", &format!("c^{alpha}")))
                    .and_then(|q| q.comm("z", "x", &format!("y^{m1}")))
                    .and_then(|q| q.comm("y", "x", &format!("c^{m1}"))),
                &["x", "y", "z"],
                &[
                    "x^{p2}",
                    "y^{p}",
                    "z^{p2}",
                    "z^{p} = x^{ap}",
                    "[x,y] = x^{p}",
                    "[x,z] = y",
                    "[y,z]",
                ],
                table(p3),
            )
        }
        ("G4", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "y", "z", "w"]).comm("y", "x", &format!("z^{m1}")),
            &["x", "y", "z", "w"],
            &[
                "x^{p}",
                "y^{p}",
                "z^{p}",
                "w^{p}",
                "[x,y] = z",
                "[x,z]",
                "[x,w]",
                "[y,z]",
                "[y,w]",
                "[z,w]",
            ],
            stated(pp + p as usize),
        ),
        ("E1", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "y", "z", "c", "n"])
                .power("x", "c")
                .and_then(|q| q.comm("z", "x", &format!("n^{m1}")))
                .and_then(|q| q.comm("z", "y", &format!("c^{m1} n"))),
            &["x", "y", "z", "n"],
            &[
                "x^{p2}",
                "y^{p}",
                "z^{p}",
                "n^{p}",
                "[y,z] = x^{p} n^-1",
                "[x,z] = n",
                "[x,y]",
                "[x,n]",
                "[y,n]",
                "[z,n]",
            ],
            stated(2 * pp),
        ),
        ("E2", None) if odd => mk(
            name,
            p,
            PcPresentation::new(p, ["x", "z", "y", "c", "n"])
                .power("x", "c n")
                .and_then(|q| q.power("z", "c"))
                .and_then(|q| q.comm("z", "x", &format!("y^{m1}")))
                .and_then(|q| q.comm("y", "x", &format!("c^{m1} n^{m1}"))),
            &["x", "y", "z", "n"],
            &[
                "x^{p2}",
                "y^{p}",
                "z^{p2}",
                "n^{p}",
                "x^{p} = z^{p} n",
                "[x,y] = x^{p}",
                "[x,z] = y",
                "[y,z]",
                "[x,n]",
                "[y,n]",
                "[z,n]",
            ],
            stated(2 * pp),
        ),
        ("E3", None) if odd => {
            let alpha = smallest_nonresidue(p);
            mk(
                name,
                p,
                PcPresentation::new(p, ["x", "z", "y", "c", "n"])
                    .power("x", "c")
                    .and_then(|q| q.power("z", &format!("c^{alpha} n")))
                    .and_then(|q| q.comm("z", "x", &format!("y^{m1} n^{m1}")))
                    .and_then(|q| q.comm("y", "x", &format!("c^{m1}"))),
                &["x", "y", "z", "n"],
                &[
                    "x^{p2}",
                    "y^{p}",
                    "z^{p2}",
                    "n^{p}",
                    "z^{p} = x^{ap} n",
                    "[x,z] = y n",
                    "[x,y] = x^{p}",
                    "[y,z]",
                    "[x,n]",
                    "[y,n]",
                    "[z,n]",
                ],
                stated(2 * pp),
            )
        }
        ("Q8" | "D8" | "EP32_G" | "EP32_H" | "L" | "H" | "G1" | "G2" | "G3" | "G4" | "E1" | "E2" | "E3", None) => {
            Err(bad_prime())
        }
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// Re-evaluates the entry's relations in `g` and checks that its letters
/// generate `g`.
pub fn paper_relation_audit(entry: &CatalogEntry, g: &FiniteGroup) -> AuditResult {
    for rel in &entry.paper_relations {
        let ok = Relation::parse(rel)
            .and_then(|r| g.satisfies(&r))
            .unwrap_or(false);
        if !ok {
            return AuditResult::Fail {
                relation: rel.clone(),
            };
        }
    }
    let letters: Option<Vec<_>> = entry.letters.iter().map(|l| g.label(l)).collect();
    match letters {
        Some(ls) if g.subgroup(&ls).order() == entry.expected_order => AuditResult::Pass,
        _ => AuditResult::Fail {
            relation: format!("<{}> generates", entry.letters.join(",")),
        },
    }
}

/// Builds, validates and audits a catalog group.
pub fn build_catalog_group(name: &str, p: u32) -> Result<Arc<FiniteGroup>> {
    let entry = catalog_entry(name, p)?;
    build_entry(&entry)
}

pub fn build_entry(entry: &CatalogEntry) -> Result<Arc<FiniteGroup>> {
    let g = build_pc_group_named(entry.pc_presentation.clone(), Some(entry.spec_ref()))?;
    if g.order() != entry.expected_order {
        return Err(Error::AuditFailed {
            name: entry.spec_ref(),
            relation: format!("order {} != {}", g.order(), entry.expected_order),
        });
    }
    match paper_relation_audit(entry, &g) {
        AuditResult::Pass => Ok(g),
        AuditResult::Fail { relation } => Err(Error::AuditFailed {
            name: entry.spec_ref(),
            relation,
        }),
    }
}

/// A catalog entry at a concrete prime, with metadata for listings.
#[derive(Clone, Debug)]
pub struct CatalogListing {
    pub spec_ref: String,
    pub expected_order: usize,
    pub expected_mu: Option<ExpectedMu>,
}

/// Names valid at an odd prime `p` plus the fixed 2-group entries.
pub fn catalog_names(p: u32) -> Vec<String> {
    let mut names: Vec<String> = Vec::new();
    if p > 2 {
        for n in ["G1", "G2", "G3", "G4", "E1", "E2", "E3", "H", "L"] {
            names.push(n.to_string());
        }
    }
    let pp = (p * p) as usize;
    names.push(format!("Zn({p})"));
    names.push(format!("Zn({pp})"));
    names.push(format!("Zn({})", pp * p as usize));
    names.push("ElemAb(2)".to_string());
    names.push("ElemAb(3)".to_string());
    names
}

/// Deterministic listing: the odd-p entries at `p`, then the 2-groups.
pub fn list_catalog(p: u32) -> Result<Vec<CatalogListing>> {
    let mut out = Vec::new();
    let mut push = |name: &str, q: u32| -> Result<()> {
        let e = catalog_entry(name, q)?;
        out.push(CatalogListing {
            spec_ref: e.spec_ref(),
            expected_order: e.expected_order,
            expected_mu: e.expected_mu,
        });
        Ok(())
    };
    for n in catalog_names(p) {
        push(&n, p)?;
    }
    if p != 2 {
        for n in ["Q8", "D8", "EP32_G", "EP32_H"] {
            push(n, 2)?;
        }
    }
    Ok(out)
}

/// Parses `"E2@p=3"`.
pub fn parse_spec_ref(s: &str) -> Result<(String, u32)> {
    let (name, prime) = s
        .trim()
        .split_once("@p=")
        .ok_or_else(|| Error::Parse(format!("expected NAME@p=PRIME, got {s:?}")))?;
    let p = prime
        .trim()
        .parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad prime in {s:?}")))?;
    Ok((name.trim().to_string(), p))
}

/// Resolves a catalog reference; `A * B` builds a direct product.
pub fn resolve_ref(s: &str) -> Result<Arc<FiniteGroup>> {
    let mut parts = s.split('*');
    let first = parts.next().unwrap();
    let (name, p) = parse_spec_ref(first)?;
    let mut g = build_catalog_group(&name, p)?;
    for part in parts {
        let (name, p) = parse_spec_ref(part)?;
        let h = build_catalog_group(&name, p)?;
        g = direct_product(&g, &h)?;
    }
    Ok(g)
}

/// Element labels of a group, for display.
pub fn labels_of(g: &FiniteGroup) -> BTreeMap<String, String> {
    g.labels()
        .iter()
        .map(|(k, &v)| (k.clone(), g.format_element(v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonresidues() {
        assert_eq!(smallest_nonresidue(3), 2);
        assert_eq!(smallest_nonresidue(5), 2);
        assert_eq!(smallest_nonresidue(7), 3);
    }

    #[test]
    fn spec_refs() {
        assert_eq!(parse_spec_ref("E2@p=3").unwrap(), ("E2".to_string(), 3));
        assert_eq!(parse_spec_ref("Zn(9)@p=3").unwrap(), ("Zn(9)".to_string(), 3));
        assert!(parse_spec_ref("E2").is_err());
        assert!(matches!(build_catalog_group("E9", 3), Err(Error::UnknownName(_))));
        assert!(matches!(build_catalog_group("E2", 2), Err(Error::BadPrime { .. })));
        assert!(matches!(build_catalog_group("Q8", 3), Err(Error::BadPrime { .. })));
        assert!(matches!(build_catalog_group("E2", 9), Err(Error::BadPrime { .. })));
        assert!(matches!(build_catalog_group("Zn(6)", 3), Err(Error::BadPrime { .. })));
    }

    #[test]
    fn cyclic_helpers() {
        let g = build_catalog_group("Zn(9)", 3).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.exponent(), 9);
        assert_eq!(build_catalog_group("Zn(1)", 3).unwrap().order(), 1);
        assert_eq!(build_catalog_group("ElemAb(3)", 3).unwrap().order(), 27);
    }

    #[test]
    fn wrong_labels_fail_audit() {
        let entry = catalog_entry("E2", 3).unwrap();
        let g = build_entry(&entry).unwrap();
        let mut swapped = BTreeMap::new();
        swapped.insert("x".to_string(), g.label("y").unwrap());
        swapped.insert("y".to_string(), g.label("x").unwrap());
        let bad = g.relabeled("E2 swapped", swapped);
        match paper_relation_audit(&entry, &bad) {
            AuditResult::Fail { relation } => assert_eq!(relation, "y^3"),
            AuditResult::Pass => panic!("swapped labels passed the audit"),
        }
    }

    #[test]
    fn listing_metadata() {
        let list = list_catalog(3).unwrap();
        let find = |r: &str| list.iter().find(|e| e.spec_ref == r).unwrap();
        assert_eq!(find("E2@p=3").expected_mu.unwrap().value, 18);
        assert_eq!(find("G4@p=3").expected_mu.unwrap().value, 12);
        assert_eq!(find("Zn(9)@p=3").expected_mu.unwrap().value, 9);
        assert_eq!(find("G1@p=3").expected_mu.unwrap().source, MuSource::DerivedExpected);
        assert_eq!(find("EP32_G@p=2").expected_mu.unwrap().value, 12);
    }

    #[test]
    fn every_entry_builds_at_three() {
        for e in list_catalog(3).unwrap() {
            let g = resolve_ref(&e.spec_ref).unwrap_or_else(|err| panic!("{}: {err}", e.spec_ref));
            assert_eq!(g.order(), e.expected_order, "{}", e.spec_ref);
        }
    }

    #[test]
    fn e2_identities() {
        let g = build_catalog_group("E2", 3).unwrap();
        let x = g.label("x").unwrap();
        let y = g.label("y").unwrap();
        assert_eq!(g.element_order(x), 9);
        // y^-1 conjugated by x
        assert_eq!(g.conj(g.inv(y), x), g.eval("z^3 y^-1 n").unwrap());
        let z = g.center();
        assert_eq!(z.bits(), g.subgroup_of_words(&["x^3", "n"]).unwrap().bits());
        let h = g.subgroup_of_words(&["y", "z"]).unwrap();
        let c = crate::lattice::core(&g, &h);
        assert_eq!(c.bits(), g.subgroup_of_words(&["z^3"]).unwrap().bits());
        let zs = g.subgroup_of_words(&["z"]).unwrap();
        assert!(!crate::lattice::is_normal(&g, &zs));
        assert_eq!(g.comm(x, g.label("z").unwrap()), y);
    }

    #[test]
    fn e3_core_and_l_center() {
        let g = build_catalog_group("E3", 3).unwrap();
        let h = g.subgroup_of_words(&["x", "y"]).unwrap();
        let c = crate::lattice::core(&g, &h);
        assert_eq!(c.bits(), g.subgroup_of_words(&["x^3", "y"]).unwrap().bits());
        assert_eq!(build_catalog_group("L", 3).unwrap().center().order(), 3);
    }
}
