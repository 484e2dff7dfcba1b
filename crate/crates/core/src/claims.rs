//! The verification ledger: every checked statement about the catalog,
//! keyed by claim id and sorted, with no timing or host data so that runs
//! are byte-identical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::cache::LatticeCache;
use crate::catalog::{self, paper_relation_audit, CatalogEntry};
use crate::degree::{
    action_kernel, check_certificate, minimal_degree, mu_abelian_crosscheck, mu_bruteforce_oracle,
    optimal_family_sizes, ORACLE_BOUND,
};
use crate::error::{Error, Result};
use crate::exceptional::{check_distinguished, exceptional_scan, neumann_example, neumann_group, quotient_mu_both_ways};
use crate::formats::{GroupSpec, SCHEMA};
use crate::group::{direct_product, quotient_group, subgroup_as_group, FiniteGroup};
use crate::hom::{find_isomorphism, Homomorphism};
use crate::lattice::{self, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Fast,
    Slow,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Fast => "fast",
            Tier::Slow => "slow",
        })
    }
}

impl FromStr for Tier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Tier> {
        match s {
            "fast" => Ok(Tier::Fast),
            "slow" => Ok(Tier::Slow),
            _ => Err(Error::Parse(format!("unknown tier {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub schema: u32,
    pub prime: u32,
    pub tier: String,
    pub passed: usize,
    pub failed: usize,
    pub claims: Vec<Claim>,
}

impl Ledger {
    pub fn new(prime: u32, tier: Tier, mut claims: Vec<Claim>) -> Ledger {
        claims.sort_by(|a, b| a.id.cmp(&b.id));
        let passed = claims.iter().filter(|c| c.passed).count();
        Ledger {
            schema: SCHEMA,
            prime,
            tier: tier.to_string(),
            passed,
            failed: claims.len() - passed,
            claims,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn get(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }

    pub fn from_json(text: &str) -> Result<Ledger> {
        Ok(serde_json::from_str(text)?)
    }

    /// One line per claim.
    pub fn to_table(&self) -> String {
        let width = self.claims.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.claims {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}  {:width$}  {}", c.id, c.observed));
            if !c.passed {
                out.push_str(&format!("  (expected {})", c.expected));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed (p = {}, tier {})\n",
            self.passed, self.failed, self.prime, self.tier
        ));
        out
    }
}

/// Catalog groups for a verification run, with optional replacement pc
/// presentations and an optional lattice cache. Built groups are memoized.
pub struct Catalog {
    overrides: BTreeMap<String, GroupSpec>,
    cache: Option<LatticeCache>,
    built: Mutex<BTreeMap<String, Arc<FiniteGroup>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OverrideFile {
    schema: u32,
    /// Keyed by catalog reference, e.g. `"E2@p=3"`.
    entries: BTreeMap<String, GroupSpec>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::builtin()
    }
}

impl Catalog {
    pub fn builtin() -> Catalog {
        Catalog {
            overrides: BTreeMap::new(),
            cache: None,
            built: Mutex::new(BTreeMap::new()),
        }
    }

    /// Reads `{"schema": 1, "entries": {"E2@p=3": <group spec>, ...}}`.
    pub fn with_overrides_file(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path)?;
        let file: OverrideFile = serde_json::from_str(&text)?;
        if file.schema != SCHEMA {
            return Err(Error::Parse(format!("unsupported catalog schema {}", file.schema)));
        }
        for key in file.entries.keys() {
            let (name, p) = catalog::parse_spec_ref(key)?;
            catalog::catalog_entry(&name, p)?;
        }
        Ok(Catalog {
            overrides: file.entries,
            ..Catalog::builtin()
        })
    }

    pub fn with_override(mut self, spec_ref: &str, spec: GroupSpec) -> Catalog {
        self.overrides.insert(spec_ref.to_string(), spec);
        self
    }

    pub fn with_cache(mut self, cache: LatticeCache) -> Catalog {
        self.cache = Some(cache);
        self
    }

    pub fn entry(&self, name: &str, p: u32) -> Result<CatalogEntry> {
        let mut entry = catalog::catalog_entry(name, p)?;
        if let Some(spec) = self.overrides.get(&entry.spec_ref()) {
            entry.pc_presentation = spec.to_presentation()?;
        }
        Ok(entry)
    }

    pub fn get(&self, name: &str, p: u32) -> Result<Arc<FiniteGroup>> {
        let entry = self.entry(name, p)?;
        let key = entry.spec_ref();
        if let Some(g) = self.built.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let g = catalog::build_entry(&entry)?;
        if let Some(cache) = &self.cache {
            cache.warm(&g)?;
        }
        self.built.lock().unwrap().insert(key, g.clone());
        Ok(g)
    }

    /// `A x B` of two catalog groups.
    pub fn product(&self, a: (&str, u32), b: (&str, u32)) -> Result<Arc<FiniteGroup>> {
        let key = format!("{}@p={} * {}@p={}", a.0, a.1, b.0, b.1);
        if let Some(g) = self.built.lock().unwrap().get(&key) {
            return Ok(g.clone());
        }
        let g = direct_product(&self.get(a.0, a.1)?, &self.get(b.0, b.1)?)?;
        if let Some(cache) = &self.cache {
            cache.warm(&g)?;
        }
        self.built.lock().unwrap().insert(key, g.clone());
        Ok(g)
    }
}

fn claim(id: impl Into<String>, expected: impl Into<String>, r: Result<(String, bool)>) -> Claim {
    let (observed, passed) = r.unwrap_or_else(|e| (format!("error: {e}"), false));
    Claim {
        id: id.into(),
        expected: expected.into(),
        observed,
        passed,
    }
}

fn eq_claim<T: fmt::Display + PartialEq>(id: impl Into<String>, expected: T, r: Result<T>) -> Claim {
    let exp = expected.to_string();
    claim(id, exp, r.map(|v| (v.to_string(), v == expected)))
}

fn mu(g: &Arc<FiniteGroup>) -> Result<usize> {
    Ok(minimal_degree(g)?.degree)
}

fn list<T: fmt::Display>(v: &[T]) -> String {
    format!("[{}]", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn subgroup_text(g: &FiniteGroup, h: &Subgroup) -> String {
    format!("<{}>", g.format_gens(h.gens()))
}

fn pow(p: u32, k: u32) -> usize {
    (p as usize).pow(k)
}

const TWO: [&str; 4] = ["Q8", "D8", "EP32_G", "EP32_H"];

fn odd_names(p: u32) -> Vec<String> {
    catalog::catalog_names(p)
}

fn catalog_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    let mut refs: Vec<(String, u32)> = odd_names(p).into_iter().map(|n| (n, p)).collect();
    refs.extend(TWO.iter().map(|n| (n.to_string(), 2)));
    for (name, q) in refs {
        let r = cat.entry(&name, q).and_then(|e| {
            let g = cat.get(&name, q)?;
            Ok((format!("order {}, audit pass", g.order()), g.order() == e.expected_order))
        });
        let expected = catalog::catalog_entry(&name, q)
            .map(|e| format!("order {}, audit pass", e.expected_order))
            .unwrap_or_default();
        out.push(claim(format!("catalog.{name}@p={q}.build"), expected, r));
    }
    if p > 2 {
        out.push(claim(
            "catalog.G4.center",
            format!("<z, w> of order {}", pow(p, 2)),
            cat.get("G4", p).and_then(|g| {
                let want = g.subgroup_of_words(&["z", "w"])?;
                let z = g.center();
                Ok((format!("{} of order {}", subgroup_text(&g, z), z.order()), *z == want))
            }),
        ));
        for (e, gname) in [("E1", "G1"), ("E2", "G2"), ("E3", "G3")] {
            out.push(claim(
                format!("catalog.{e}.quotient_audit"),
                format!("{e}/<n> satisfies the {gname} relations"),
                (|| {
                    let g = cat.get(e, p)?;
                    let (q, _) = quotient_group(&g, &g.subgroup_of_words(&["n"])?)?;
                    let entry = cat.entry(gname, p)?;
                    Ok(match paper_relation_audit(&entry, &q) {
                        catalog::AuditResult::Pass => ("pass".to_string(), true),
                        catalog::AuditResult::Fail { relation } => (format!("fails {relation}"), false),
                    })
                })(),
            ));
        }
    }
    out
}

/// Quotient `E/<n>` mapped to `G` letter by letter, `n` to the identity.
fn quotient_iso(cat: &Catalog, e: &str, gname: &str, p: u32) -> Result<(String, bool)> {
    let big = cat.get(e, p)?;
    let target = cat.get(gname, p)?;
    let (q, _) = quotient_group(&big, &big.subgroup_of_words(&["n"])?)?;
    let images = q
        .generator_names()
        .iter()
        .map(|name| match target.label(name) {
            Some(x) => Ok(x),
            None if name == "n" => Ok(target.identity()),
            None => Err(Error::Parse(format!("no image for {name}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let map = Homomorphism::new(q, target, images);
    Ok(match map.verify_epimorphism() {
        Ok(()) => ("verified".to_string(), true),
        Err(err) => (format!("rejected: {err}"), false),
    })
}

fn thm5_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    let (p2, p3, p4) = (pow(p, 2), pow(p, 3), pow(p, 4));
    for (e, gname) in [("E1", "G1"), ("E2", "G2"), ("E3", "G3")] {
        out.push(eq_claim(format!("thm5.{e}.mu"), 2 * p2, cat.get(e, p).and_then(|g| mu(&g))));
        out.push(eq_claim(
            format!("thm5.{e}.orbits"),
            list(&[p2, p2]),
            cat.get(e, p).and_then(|g| Ok(list(&minimal_degree(&g)?.orbit_sizes))),
        ));
        out.push(claim(
            format!("thm5.{e}.distinguished"),
            format!("<n>: {} -> {}", 2 * p2, p3),
            cat.get(e, p).and_then(|g| {
                let n = g.subgroup_of_words(&["n"])?;
                let (a, b, d) = check_distinguished(&g, &n)?;
                Ok((format!("<n>: {a} -> {b}"), (a, b, d) == (2 * p2, p3, true)))
            }),
        ));
        out.push(claim(
            format!("thm5.{e}.scan"),
            format!("exceptional, <n> distinguished with quotient of order {p4}"),
            cat.get(e, p).and_then(|g| {
                let report = exceptional_scan(&g)?;
                let n = g.subgroup_of_words(&["n"])?;
                let at_n = report.entry_for(&n).is_some_and(|x| x.distinguished);
                let dist: Vec<String> = report
                    .distinguished()
                    .map(|x| format!("<{}> ({} -> {})", x.normal, report.mu, x.mu_quotient))
                    .collect();
                Ok((
                    format!("distinguished: {}", if dist.is_empty() { "none".into() } else { dist.join(", ") }),
                    report.is_exceptional() && at_n && g.order() / n.order() == p4,
                ))
            }),
        ));
        out.push(claim(
            format!("thm5.{e}.quotient_iso"),
            format!("{e}/<n> -> {gname} verified"),
            quotient_iso(cat, e, gname, p),
        ));
        out.push(eq_claim(format!("thm5.{gname}.mu"), p3, cat.get(gname, p).and_then(|g| mu(&g))));
    }
    out.push(claim(
        "thm5.E2.center",
        "<x^p, n>",
        cat.get("E2", p).and_then(|g| {
            let want = g.subgroup_of_words(&[&format!("x^{p}"), "n"])?;
            Ok((subgroup_text(&g, g.center()), *g.center() == want))
        }),
    ));
    out.push(claim(
        "thm5.E2.core_yz",
        "<z^p>",
        cat.get("E2", p).and_then(|g| {
            let c = lattice::core(&g, &g.subgroup_of_words(&["y", "z"])?);
            Ok((subgroup_text(&g, &c), c == g.subgroup_of_words(&[&format!("z^{p}")])?))
        }),
    ));
    out.push(claim(
        "thm5.E3.center",
        "<x^p, n>",
        cat.get("E3", p).and_then(|g| {
            let want = g.subgroup_of_words(&[&format!("x^{p}"), "n"])?;
            Ok((subgroup_text(&g, g.center()), *g.center() == want))
        }),
    ));
    out.push(claim(
        "thm5.E3.core_xy",
        "<x^p, y>",
        cat.get("E3", p).and_then(|g| {
            let c = lattice::core(&g, &g.subgroup_of_words(&["x", "y"])?);
            Ok((subgroup_text(&g, &c), c == g.subgroup_of_words(&[&format!("x^{p}"), "y"])?))
        }),
    ));
    out.push(claim(
        "thm5.E2.z_not_normal",
        "<z> not normal, [x,z] = y",
        cat.get("E2", p).and_then(|g| {
            let z = g.subgroup_of_words(&["z"])?;
            let c = g.comm(g.eval("x")?, g.eval("z")?);
            Ok((
                format!("normal: {}, [x,z] = {}", lattice::is_normal(&g, &z), g.format_element(c)),
                !lattice::is_normal(&g, &z) && c == g.eval("y")?,
            ))
        }),
    ));
    out
}

fn scan_not_exceptional(g: &Arc<FiniteGroup>) -> Result<(String, bool)> {
    let r = exceptional_scan(g)?;
    let worst = r.entries.iter().map(|e| e.mu_quotient).max().unwrap_or(0);
    Ok((
        format!("mu {}, largest quotient degree {}, {} normal subgroups", r.mu, worst, r.entries.len()),
        !r.is_exceptional(),
    ))
}

fn small_order_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    for name in odd_names(p) {
        let r = cat.get(&name, p).and_then(|g| {
            if g.order() > pow(p, 4) {
                return Ok(None);
            }
            scan_not_exceptional(&g).map(Some)
        });
        match r {
            Ok(None) => {}
            Ok(Some(v)) => out.push(claim(format!("thm3.{name}.not_exceptional"), "not exceptional", Ok(v))),
            Err(e) => out.push(claim(format!("thm3.{name}.not_exceptional"), "not exceptional", Err(e))),
        }
    }
    for name in ["Q8", "D8"] {
        out.push(claim(
            format!("prop1.{name}.not_exceptional"),
            "not exceptional",
            cat.get(name, 2).and_then(|g| scan_not_exceptional(&g)),
        ));
    }
    out
}

fn prop1_claims(cat: &Catalog) -> Vec<Claim> {
    let mut out = Vec::new();
    for (name, short, word) in [("EP32_G", "G", "x^4 y^2"), ("EP32_H", "H", "n")] {
        out.push(eq_claim(format!("prop1.{short}.mu"), 12, cat.get(name, 2).and_then(|g| mu(&g))));
        out.push(claim(
            format!("prop1.{short}.distinguished"),
            format!("<{word}>: 12 -> 16"),
            cat.get(name, 2).and_then(|g| {
                let n = g.subgroup_of_words(&[word])?;
                let (a, b, d) = check_distinguished(&g, &n)?;
                Ok((format!("<{word}>: {a} -> {b}"), (a, b, d) == (12, 16, true)))
            }),
        ));
        out.push(claim(
            format!("prop1.{short}.scan"),
            format!("exceptional at <{word}>"),
            cat.get(name, 2).and_then(|g| {
                let report = exceptional_scan(&g)?;
                let n = g.subgroup_of_words(&[word])?;
                let hit = report.entry_for(&n).is_some_and(|e| e.distinguished);
                let dist: Vec<String> = report
                    .distinguished()
                    .map(|x| format!("<{}> ({} -> {})", x.normal, report.mu, x.mu_quotient))
                    .collect();
                Ok((format!("distinguished: {}", dist.join(", ")), hit))
            }),
        ));
    }
    out
}

fn neumann_claims(tier: Tier) -> Vec<Claim> {
    let mut out = Vec::new();
    let mut ns = vec![2usize];
    if tier == Tier::Slow {
        ns.push(3);
    }
    for n in ns {
        let r = neumann_example(n);
        let (mu_g, mu_q) = match &r {
            Ok(v) => (Ok(v.0), Ok(v.1)),
            Err(e) => (Err(Error::Parse(e.to_string())), Err(Error::Parse(e.to_string()))),
        };
        out.push(eq_claim(format!("neumann.n{n}.quotient"), 1usize << (n + 1), mu_q));
        // Q8^n/N is extraspecial of order 2^(1+2n), of + type for even n and
        // - type for odd n; the type shows in the count of x with x^2 = 1
        let sign = if n % 2 == 0 { 1i64 } else { -1 };
        let want = (1i64 << (2 * n)) + sign * (1i64 << n);
        out.push(claim(
            format!("neumann.n{n}.type"),
            format!("extraspecial {} type, {want} solutions of x^2 = 1", if sign > 0 { "+" } else { "-" }),
            (|| {
                let (g, sub) = neumann_group(n)?;
                let (q, _) = quotient_group(&g, &sub)?;
                let roots = q.elements().filter(|&x| q.mul(x, x) == 0).count() as i64;
                let z = q.center().order();
                let frattini_ok = q.elements().all(|x| q.center().contains(q.mul(x, x)));
                let ok = z == 2 && frattini_ok && lattice::derived_subgroup(&q).order() == 2 && roots == want;
                Ok((format!("center order {z}, {roots} solutions of x^2 = 1"), ok))
            })(),
        ));
        // the product formula gives n * mu(Q8); "4n" would be half that
        out.push(claim(
            format!("neumann.n{n}.mu"),
            format!("{} = n mu(Q8) (text states 4n = {})", 8 * n, 4 * n),
            mu_g.map(|v| (v.to_string(), v == 8 * n)),
        ));
    }
    out
}

fn thm6_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    let target = pow(p, 2) + p as usize;
    out.push(eq_claim("thm6.G4.mu", target, cat.get("G4", p).and_then(|g| mu(&g))));
    for name in ["H", "L"] {
        out.push(eq_claim(
            format!("thm6.{name}xZp.mu"),
            target,
            cat.product((name, p), (&format!("Zn({p})"), p)).and_then(|g| mu(&g)),
        ));
    }
    for name in ["E1", "E2", "E3"] {
        out.push(claim(
            format!("thm6.{name}.abelian_normal_p3"),
            format!("abelian normal subgroup of order {}", pow(p, 3)),
            cat.get(name, p).and_then(|g| {
                Ok(match lattice::has_abelian_normal_of_order(&g, pow(p, 3))? {
                    Some(b) => (format!("witness {}", subgroup_text(&g, &b)), true),
                    None => ("none".to_string(), false),
                })
            }),
        ));
    }
    // the five groups of order p^3
    let five: Vec<(&str, Result<Arc<FiniteGroup>>)> = vec![
        ("Zp3", cat.get(&format!("Zn({})", pow(p, 3)), p)),
        ("Zp2xZp", cat.product((&format!("Zn({})", pow(p, 2)), p), (&format!("Zn({p})"), p))),
        ("Zp^3", cat.get("ElemAb(3)", p)),
        ("H", cat.get("H", p)),
        ("L", cat.get("L", p)),
    ];
    for i in 0..five.len() {
        for j in i + 1..five.len() {
            let (a, ga) = &five[i];
            let (b, gb) = &five[j];
            let r = match (ga, gb) {
                (Ok(x), Ok(y)) => separate(x, y),
                (Err(e), _) | (_, Err(e)) => Err(Error::Parse(e.to_string())),
            };
            out.push(claim(format!("thm6.order_p3.{a}_vs_{b}"), "not isomorphic", r));
        }
    }
    out
}

/// Invariants that isomorphic groups share.
fn signature(g: &FiniteGroup) -> Result<String> {
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for x in g.elements() {
        *orders.entry(g.element_order(x)).or_default() += 1;
    }
    let z = lattice::abelian_invariants(g, g.center())?;
    let d = lattice::derived_subgroup(g).order();
    Ok(format!(
        "order {}, abelian {}, element orders {:?}, center {:?}, derived {}",
        g.order(),
        g.is_abelian(),
        orders,
        z,
        d
    ))
}

/// Non-isomorphism by invariants, falling back to exhaustive search.
fn separate(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> Result<(String, bool)> {
    let (sa, sb) = (signature(a)?, signature(b)?);
    if sa != sb {
        return Ok(("separated by invariants".into(), true));
    }
    let src = if a.pc_presentation().is_some() { (a, b) } else { (b, a) };
    if src.0.pc_presentation().is_none() {
        return Err(Error::Parse("exhaustive search needs a pc-presented side".into()));
    }
    Ok(match find_isomorphism(src.0, src.1) {
        None => ("same invariants, no isomorphism by exhaustive search".into(), true),
        Some(_) => ("isomorphic".into(), false),
    })
}

fn separation_claims(cat: &Catalog, p: u32, tier: Tier) -> Vec<Claim> {
    let mut out = Vec::new();
    let names = ["G1", "G2", "G3", "G4"];
    for i in 0..4 {
        for j in i + 1..4 {
            let r = cat
                .get(names[i], p)
                .and_then(|a| cat.get(names[j], p).and_then(|b| separate(&a, &b)));
            out.push(claim(format!("sep.{}_vs_{}", names[i], names[j]), "not isomorphic", r));
        }
    }
    if p == 3 || tier == Tier::Slow {
        out.push(claim(
            "sep.G2_vs_G3.exhaustive",
            "no isomorphism either way",
            cat.get("G2", p).and_then(|a| {
                let b = cat.get("G3", p)?;
                let fwd = find_isomorphism(&a, &b).is_some();
                let back = find_isomorphism(&b, &a).is_some();
                Ok((format!("G2->G3 found: {fwd}, G3->G2 found: {back}"), !fwd && !back))
            }),
        ));
    }
    out
}

/// Pairs of small catalog groups for the product formula.
fn wright_pairs(p: u32) -> Vec<((String, u32), (String, u32))> {
    let mut out = Vec::new();
    let odd: Vec<String> = vec![
        format!("Zn({p})"),
        format!("Zn({})", pow(p, 2)),
        "ElemAb(2)".into(),
        "H".into(),
        "L".into(),
    ];
    let orders = [p as usize, pow(p, 2), pow(p, 2), pow(p, 3), pow(p, 3)];
    for i in 0..odd.len() {
        for j in i..odd.len() {
            if orders[i] * orders[j] <= pow(p, 4) {
                out.push(((odd[i].clone(), p), (odd[j].clone(), p)));
            }
        }
    }
    let two = ["Zn(2)", "Zn(4)", "D8", "Q8"];
    for i in 0..two.len() {
        for j in i..two.len() {
            out.push(((two[i].to_string(), 2), (two[j].to_string(), 2)));
        }
    }
    out
}

fn wright_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    wright_pairs(p)
        .into_iter()
        .map(|((a, pa), (b, pb))| {
            let r = (|| {
                let ga = cat.get(&a, pa)?;
                let gb = cat.get(&b, pb)?;
                let sum = mu(&ga)? + mu(&gb)?;
                let prod = mu(&cat.product((&a, pa), (&b, pb))?)?;
                Ok((format!("mu(AxB) = {prod}, mu(A) + mu(B) = {sum}"), prod == sum))
            })();
            claim(format!("wright.{a}x{b}"), "mu(AxB) = mu(A) + mu(B)", r)
        })
        .collect()
}

fn johnson_claims(cat: &Catalog, p: u32, tier: Tier) -> Vec<Claim> {
    let mut out = Vec::new();
    for name in odd_names(p) {
        let g = match cat.get(&name, p) {
            Ok(g) => g,
            Err(e) => {
                out.push(claim(format!("thm1.{name}.orbits"), "orbit count = rank(Z)", Err(e)));
                continue;
            }
        };
        if g.order() == 1 {
            continue;
        }
        let d = lattice::center_rank(&g);
        out.push(claim(
            format!("thm1.{name}.orbits"),
            format!("{d} orbits = rank(Z)"),
            minimal_degree(&g).map(|c| {
                (format!("{} orbits {}", c.orbit_sizes.len(), list(&c.orbit_sizes)), c.orbit_sizes.len() == d)
            }),
        ));
        if tier == Tier::Slow && g.order() <= ORACLE_BOUND {
            out.push(claim(
                format!("thm1.{name}.all_optimal"),
                format!("every optimal family has {d} members"),
                optimal_family_sizes(&g).map(|s| {
                    let v: Vec<usize> = s.iter().copied().collect();
                    (format!("optimal family sizes {}", list(&v)), v == [d])
                }),
            ));
        }
        let applicable = (|| -> Result<bool> {
            if g.is_abelian() || !lattice::is_directly_indecomposable(&g)? {
                return Ok(false);
            }
            let inv = lattice::abelian_invariants(&g, g.center())?;
            Ok(inv.len() == 1 || inv.iter().all(|&k| k == p as usize))
        })();
        match applicable {
            Ok(false) => {}
            Ok(true) => out.push(claim(
                format!("thm2.{name}.bound"),
                "p mu(Z) <= mu(G) <= |G:Z| mu(Z) / p",
                (|| {
                    let z = subgroup_as_group(&g, g.center())?;
                    let mz = mu(&z)?;
                    let mg = mu(&g)?;
                    let lo = p as usize * mz;
                    let hi = (g.order() / z.order()) * mz / p as usize;
                    Ok((format!("{lo} <= {mg} <= {hi}"), lo <= mg && mg <= hi))
                })(),
            )),
            Err(e) => out.push(claim(format!("thm2.{name}.bound"), "applicability", Err(e))),
        }
    }
    out
}

/// Groups of order at most the oracle bound: catalog groups at `p` and at
/// 2, products from the product claims, and every quotient of each.
fn oracle_corpus(cat: &Catalog, p: u32) -> Result<Vec<(String, Arc<FiniteGroup>)>> {
    let mut base: Vec<(String, Arc<FiniteGroup>)> = Vec::new();
    let mut refs: Vec<(String, u32)> = odd_names(p).into_iter().map(|n| (n, p)).collect();
    refs.extend(TWO.iter().map(|n| (n.to_string(), 2)));
    refs.extend([("Zn(2)".to_string(), 2), ("Zn(4)".to_string(), 2), ("ElemAb(2)".to_string(), 2)]);
    for (name, q) in refs {
        let g = cat.get(&name, q)?;
        if g.order() <= ORACLE_BOUND {
            base.push((format!("{name}@p={q}"), g));
        }
    }
    Ok(base)
}

fn oracle_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    let corpus = match oracle_corpus(cat, p) {
        Ok(c) => c,
        Err(e) => return vec![claim("oracle.corpus", "corpus builds", Err(e))],
    };
    let mut out = Vec::new();
    for (name, g) in corpus {
        let r = (|| {
            let l = lattice::lattice(&g)?;
            let mut groups = vec![g.clone()];
            for id in l.normal_ids() {
                if id != l.trivial_id() && id != l.whole_id() {
                    groups.push(quotient_group(&g, l.get(id))?.0);
                }
            }
            let mut bad = Vec::new();
            for h in &groups {
                let a = mu(h)?;
                let b = mu_bruteforce_oracle(h)?.degree;
                if a != b {
                    bad.push(format!("{}: {a} vs {b}", h.name()));
                }
            }
            Ok(if bad.is_empty() {
                (format!("{} groups agree", groups.len()), true)
            } else {
                (bad.join("; "), false)
            })
        })();
        out.push(claim(format!("oracle.{name}"), "solver = exhaustive oracle on group and quotients", r));
    }
    out
}

/// Certificates, monotonicity, abelian cross-check, random faithfulness
/// and the two quotient construction paths.
fn invariant_claims(cat: &Catalog, p: u32) -> Vec<Claim> {
    let mut out = Vec::new();
    let mut refs: Vec<(String, u32)> = odd_names(p).into_iter().map(|n| (n, p)).collect();
    refs.extend(TWO.iter().map(|n| (n.to_string(), 2)));
    for (name, q) in refs {
        let g = match cat.get(&name, q) {
            Ok(g) => g,
            Err(e) => {
                out.push(claim(format!("cert.{name}@p={q}"), "certificate checks", Err(e)));
                continue;
            }
        };
        out.push(claim(
            format!("cert.{name}@p={q}"),
            "faithful action of degree mu",
            minimal_degree(&g).map(|c| (format!("degree {}", c.degree), check_certificate(&g, &c))),
        ));
        if g.is_abelian() {
            out.push(claim(
                format!("abelian.{name}@p={q}"),
                "mu = sum of invariant factors",
                (|| {
                    let a = mu_abelian_crosscheck(&g)?;
                    let b = mu(&g)?;
                    Ok((format!("{b} vs {a}"), a == b))
                })(),
            ));
        }
        if g.order() <= ORACLE_BOUND {
            out.push(claim(format!("monotone.{name}@p={q}"), "mu(H) <= mu(G) for every subgroup", monotone(&g)));
        }
        if g.order() > 1 && g.order() <= 729 {
            out.push(claim(
                format!("faithful.{name}@p={q}"),
                "three faithfulness tests agree on 200 random families",
                random_faithfulness(&g, 200, 0x5eed ^ g.order() as u64),
            ));
        }
        if g.order() > 1 && g.order() <= pow(p.max(q), 5) {
            out.push(claim(
                format!("dual.{name}@p={q}"),
                "mu(G/N) equal via coset table and rebuilt pc presentation",
                dual_paths(&g),
            ));
        }
    }
    out
}

fn monotone(g: &Arc<FiniteGroup>) -> Result<(String, bool)> {
    let l = lattice::lattice(g)?;
    let mg = mu(g)?;
    let mut worst = 0;
    for h in l.subgroups() {
        let sub = subgroup_as_group(g, h)?;
        worst = worst.max(mu(&sub)?);
    }
    Ok((format!("max over {} subgroups {worst}, mu(G) {mg}", l.len()), worst <= mg))
}

fn dual_paths(g: &Arc<FiniteGroup>) -> Result<(String, bool)> {
    let l = lattice::lattice(g)?;
    let mut bad = Vec::new();
    let mut count = 0;
    for id in l.normal_ids() {
        if id == l.trivial_id() || id == l.whole_id() {
            continue;
        }
        count += 1;
        let (a, b) = quotient_mu_both_ways(g, l.get(id))?;
        if a != b {
            bad.push(format!("<{}>: {a} vs {b}", g.format_gens(l.get(id).gens())));
        }
    }
    Ok(if bad.is_empty() {
        (format!("{count} quotients agree"), true)
    } else {
        (bad.join("; "), false)
    })
}

/// For random families: trivial core intersection, every minimal normal
/// subgroup avoided by some core, and trivial action kernel must coincide.
pub fn random_faithfulness(g: &Arc<FiniteGroup>, trials: usize, seed: u64) -> Result<(String, bool)> {
    let l = lattice::lattice(g)?;
    let socle = lattice::socle_minimal_normals(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<usize> = (0..l.len()).filter(|&i| i != l.whole_id()).collect();
    let mut faithful = 0;
    for _ in 0..trials {
        let k = rng.gen_range(1..=3.min(ids.len()));
        let fam: Vec<usize> = ids.choose_multiple(&mut rng, k).copied().collect();
        let mut inter = Bitset::full(g.order());
        for &i in &fam {
            inter.intersect_with(l.core(i).bits());
        }
        let a = inter.count() == 1;
        let b = socle
            .iter()
            .all(|m| fam.iter().any(|&i| !m.is_subgroup_of(l.core(i))));
        let subs: Vec<Subgroup> = fam.iter().map(|&i| l.get(i).clone()).collect();
        let c = action_kernel(g, &subs).is_trivial();
        if a != b || b != c {
            let ids: BTreeSet<usize> = fam.into_iter().collect();
            return Ok((format!("disagree on family {ids:?}: {a} {b} {c}"), false));
        }
        faithful += a as usize;
    }
    Ok((format!("{trials} families agree, {faithful} faithful"), true))
}

/// Structural properties: orbit count and bound, product formula,
/// the order-p^3 and order-p^4 lemma facts, separation of the quotients,
/// and the solver invariants.
pub fn theorem_suite(cat: &Catalog, p: u32, tier: Tier) -> Vec<Claim> {
    let mut out = Vec::new();
    out.extend(johnson_claims(cat, p, tier));
    out.extend(wright_claims(cat, p));
    out.extend(thm6_claims(cat, p));
    out.extend(separation_claims(cat, p, tier));
    out.extend(oracle_claims(cat, p));
    out.extend(invariant_claims(cat, p));
    out
}

/// Every claim at odd prime `p` plus the fixed order-8 and order-32 groups.
pub fn verify(cat: &Catalog, p: u32, tier: Tier) -> Result<Ledger> {
    if p < 3 || !crate::pc::is_prime(p) {
        return Err(Error::BadPrime {
            name: "verify".into(),
            prime: p,
        });
    }
    let mut claims = Vec::new();
    claims.extend(catalog_claims(cat, p));
    claims.extend(thm5_claims(cat, p));
    claims.extend(small_order_claims(cat, p));
    claims.extend(prop1_claims(cat));
    claims.extend(neumann_claims(tier));
    claims.extend(theorem_suite(cat, p, tier));
    Ok(Ledger::new(p, tier, claims))
}
