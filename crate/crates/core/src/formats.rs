//! JSON formats: group-spec files, mu certificates, exceptionality reports.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::degree::{MuCertificate, Permutation};
use crate::error::{Error, Result};
use crate::exceptional::ExceptionalReport;
use crate::group::{build_pc_group_named, FiniteGroup};
use crate::pc::PcPresentation;

pub const SCHEMA: u32 = 1;

/// `{"prime": 3, "generators": [...], "powers": {"x": {"c": 1}},
/// "commutators": {"[y,x]": {"c": 2}}}`; omitted rules are trivial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub prime: u32,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub powers: BTreeMap<String, BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub commutators: BTreeMap<String, BTreeMap<String, i64>>,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<GroupSpec> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn to_presentation(&self) -> Result<PcPresentation> {
        let mut pres = PcPresentation::new(self.prime, self.generators.iter().cloned());
        let p = self.prime as i64;
        if p < 2 {
            return Err(Error::Parse(format!("bad prime {}", self.prime)));
        }
        let exps = |rule: &str, word: &BTreeMap<String, i64>| -> Result<Vec<u32>> {
            let mut v = vec![0u32; self.generators.len()];
            for (name, &e) in word {
                let k = pres_index(&self.generators, name).ok_or_else(|| Error::MalformedRule {
                    rule: rule.to_string(),
                    reason: format!("unknown generator {name}"),
                })?;
                v[k] = e.rem_euclid(p) as u32;
            }
            Ok(v)
        };
        for (gen, word) in &self.powers {
            let i = pres_index(&self.generators, gen)
                .ok_or_else(|| Error::Parse(format!("power rule for unknown generator {gen}")))?;
            pres.set_power(i, exps(&format!("{gen}^{}", self.prime), word)?);
        }
        for (key, word) in &self.commutators {
            let inner = key
                .trim()
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .and_then(|s| s.split_once(','))
                .ok_or_else(|| Error::Parse(format!("commutator key {key:?} is not [a,b]")))?;
            let (a, b) = (inner.0.trim(), inner.1.trim());
            let j = pres_index(&self.generators, a)
                .ok_or_else(|| Error::Parse(format!("unknown generator {a} in {key}")))?;
            let i = pres_index(&self.generators, b)
                .ok_or_else(|| Error::Parse(format!("unknown generator {b} in {key}")))?;
            if j <= i {
                return Err(Error::MalformedRule {
                    rule: key.clone(),
                    reason: "commutator rules are stated as [later, earlier]".into(),
                });
            }
            pres.set_commutator(j, i, exps(key, word)?);
        }
        Ok(pres)
    }

    pub fn from_presentation(pres: &PcPresentation) -> GroupSpec {
        let names = pres.names();
        let word = |v: &[u32]| -> BTreeMap<String, i64> {
            v.iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| (names[k].clone(), e as i64))
                .collect()
        };
        let powers = (0..pres.ngens())
            .filter(|&i| pres.power_rule(i).iter().any(|&e| e != 0))
            .map(|i| (names[i].clone(), word(pres.power_rule(i))))
            .collect();
        let commutators = pres
            .nontrivial_commutators()
            .map(|(&(j, i), v)| (format!("[{},{}]", names[j], names[i]), word(v)))
            .collect();
        GroupSpec {
            prime: pres.prime(),
            generators: names.to_vec(),
            powers,
            commutators,
        }
    }
}

fn pres_index(names: &[String], name: &str) -> Option<usize> {
    names.iter().position(|n| n == name)
}

/// Reads and builds a group-spec file.
pub fn load_group_spec(path: &Path) -> Result<Arc<FiniteGroup>> {
    let text = std::fs::read_to_string(path)?;
    let spec = GroupSpec::from_json(&text)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "group".into());
    build_pc_group_named(spec.to_presentation()?, Some(name))
}

/// A catalog reference such as `E2@p=3` (or a `*` product of them), or a
/// path to a group-spec file.
pub fn resolve_group(spec: &str) -> Result<Arc<FiniteGroup>> {
    if spec.contains("@p=") {
        catalog::resolve_ref(spec)
    } else {
        load_group_spec(Path::new(spec))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitJson {
    pub subgroup_gens: Vec<String>,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub schema: u32,
    pub group: String,
    pub mu: usize,
    pub orbits: Vec<OrbitJson>,
    pub perm_gens: BTreeMap<String, String>,
}

impl CertificateJson {
    pub fn new(g: &FiniteGroup, cert: &MuCertificate) -> CertificateJson {
        CertificateJson {
            schema: SCHEMA,
            group: cert.group.clone(),
            mu: cert.degree,
            orbits: cert
                .family
                .iter()
                .map(|h| OrbitJson {
                    subgroup_gens: h.gens().iter().map(|&x| g.format_element(x)).collect(),
                    index: g.order() / h.order(),
                })
                .collect(),
            perm_gens: cert
                .permutation_generators
                .iter()
                .map(|(n, p)| (n.clone(), p.to_string()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<CertificateJson> {
        Ok(serde_json::from_str(text)?)
    }

    /// Checks the permutations against `g` without trusting the solver:
    /// generator images extend to a homomorphism with trivial kernel on
    /// `mu` points, and the orbit indices sum to `mu`.
    pub fn check_against(&self, g: &FiniteGroup) -> Result<bool> {
        if self.orbits.iter().map(|o| o.index).sum::<usize>() != self.mu {
            return Ok(false);
        }
        let mut images = Vec::new();
        for name in g.generator_names() {
            let Some(text) = self.perm_gens.get(name) else {
                return Ok(false);
            };
            images.push(Permutation::parse_cycles(text, self.mu)?);
        }
        let mut perm_of: Vec<Option<Permutation>> = vec![None; g.order()];
        perm_of[0] = Some(Permutation::identity(self.mu));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            let px = perm_of[x].clone().unwrap();
            for (k, &s) in g.generators().iter().enumerate() {
                let y = g.mul(x, s);
                let py = px.then(&images[k]);
                match &perm_of[y] {
                    None => {
                        perm_of[y] = Some(py);
                        queue.push_back(y);
                    }
                    Some(q) if *q != py => return Ok(false),
                    Some(_) => {}
                }
            }
        }
        let identities = perm_of
            .iter()
            .filter(|p| p.as_ref().is_some_and(|p| p.is_identity()))
            .count();
        Ok(perm_of.iter().all(Option::is_some) && identities == 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntryJson {
    pub normal_gens: Vec<String>,
    pub order: usize,
    pub mu_quotient: usize,
    pub distinguished: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: u32,
    pub group: String,
    pub mu: usize,
    pub exceptional: bool,
    pub entries: Vec<ReportEntryJson>,
}

impl ReportJson {
    pub fn new(g: &FiniteGroup, report: &ExceptionalReport) -> ReportJson {
        ReportJson {
            schema: SCHEMA,
            group: report.group.clone(),
            mu: report.mu,
            exceptional: report.is_exceptional(),
            entries: report
                .entries
                .iter()
                .map(|e| ReportEntryJson {
                    normal_gens: e.normal_gens.iter().map(|&x| g.format_element(x)).collect(),
                    order: e.order,
                    mu_quotient: e.mu_quotient,
                    distinguished: e.distinguished,
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<ReportJson> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::minimal_degree;

    #[test]
    fn spec_round_trip() {
        let entry = catalog::catalog_entry("E2", 3).unwrap();
        let spec = GroupSpec::from_presentation(&entry.pc_presentation);
        let again = GroupSpec::from_json(&spec.to_json()).unwrap();
        assert_eq!(again, spec);
        assert_eq!(again.to_presentation().unwrap(), entry.pc_presentation);
    }

    #[test]
    fn spec_rejects_reversed_commutator() {
        let text = r#"{"prime": 3, "generators": ["x", "y"], "commutators": {"[x,y]": {"y": 1}}}"#;
        let spec = GroupSpec::from_json(text).unwrap();
        assert!(matches!(spec.to_presentation(), Err(Error::MalformedRule { .. })));
        assert!(GroupSpec::from_json(r#"{"prime": 3}"#).is_err());
    }

    #[test]
    fn certificate_round_trip_and_check() {
        let g = catalog::build_catalog_group("G4", 3).unwrap();
        let cert = minimal_degree(&g).unwrap();
        let json = CertificateJson::new(&g, &cert);
        let back = CertificateJson::from_json(&json.to_json()).unwrap();
        assert_eq!(back, json);
        assert_eq!(back.mu, 12);
        assert!(back.check_against(&g).unwrap());
        let mut broken = back.clone();
        broken.perm_gens.insert("x".into(), "()".into());
        assert!(!broken.check_against(&g).unwrap());
    }
}
