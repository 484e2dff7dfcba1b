//! Exceptional groups: a normal `N` with `mu(G/N) > mu(G)`.

use std::sync::Arc;

use rayon::prelude::*;

use crate::catalog;
use crate::degree::minimal_degree;
use crate::error::{Error, Result};
use crate::group::{build_pc_group, derive_pc_presentation, direct_product, quotient_group, Elem, FiniteGroup};
use crate::lattice::{self, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalEntry {
    /// Lattice id of `N`.
    pub normal_id: usize,
    pub normal_gens: Vec<Elem>,
    /// `N` written out with the group's letters.
    pub normal: String,
    pub order: usize,
    pub mu_quotient: usize,
    pub distinguished: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalReport {
    pub group: String,
    pub mu: usize,
    /// One entry per nontrivial proper normal subgroup, by order then key.
    pub entries: Vec<ExceptionalEntry>,
}

impl ExceptionalReport {
    pub fn is_exceptional(&self) -> bool {
        self.entries.iter().any(|e| e.distinguished)
    }

    pub fn distinguished(&self) -> impl Iterator<Item = &ExceptionalEntry> {
        self.entries.iter().filter(|e| e.distinguished)
    }

    pub fn entry_for(&self, n: &Subgroup) -> Option<&ExceptionalEntry> {
        self.entries.iter().find(|e| {
            e.order == n.order() && e.normal_gens.iter().all(|&x| n.contains(x))
        })
    }
}

fn quotient_mu(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<usize> {
    let (q, _) = quotient_group(g, n)?;
    Ok(minimal_degree(&q)?.degree)
}

pub fn exceptional_scan(g: &Arc<FiniteGroup>) -> Result<ExceptionalReport> {
    let mu = minimal_degree(g)?.degree;
    let l = lattice::lattice(g)?;
    let ids: Vec<usize> = l
        .normal_ids()
        .filter(|&i| i != l.trivial_id() && i != l.whole_id())
        .collect();
    let entries = ids
        .par_iter()
        .map(|&id| {
            let n = l.get(id);
            let mu_quotient = quotient_mu(g, n)?;
            Ok(ExceptionalEntry {
                normal_id: id,
                normal_gens: n.gens().to_vec(),
                normal: g.format_gens(n.gens()),
                order: n.order(),
                mu_quotient,
                distinguished: mu_quotient > mu,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ExceptionalReport {
        group: g.name().to_string(),
        mu,
        entries,
    })
}

/// `(mu(G), mu(G/N), mu(G/N) > mu(G))` for one normal `N`.
pub fn check_distinguished(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(usize, usize, bool)> {
    if !lattice::is_normal(g, n) {
        return Err(Error::NotNormal);
    }
    let mu = minimal_degree(g)?.degree;
    let mu_q = quotient_mu(g, n)?;
    Ok((mu, mu_q, mu_q > mu))
}

/// `mu(G/N)` twice: on the quotient's coset table, and on a group rebuilt
/// from a pc presentation derived for the quotient.
pub fn quotient_mu_both_ways(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<(usize, usize)> {
    let (q, _) = quotient_group(g, n)?;
    let direct = minimal_degree(&q)?.degree;
    let (pres, _) = derive_pc_presentation(&q, &q.whole());
    let rebuilt = build_pc_group(pres)?;
    Ok((direct, minimal_degree(&rebuilt)?.degree))
}

/// `Q8^n` and `N = <(z,z,1,..,1), (1,z,z,1,..,1), ..., (1,..,1,z,z)>`.
pub fn neumann_group(n: usize) -> Result<(Arc<FiniteGroup>, Subgroup)> {
    assert!(n >= 1);
    let q8 = catalog::build_catalog_group("Q8", 2)?;
    let mut g = q8.clone();
    for _ in 1..n {
        g = direct_product(&g, &q8)?;
    }
    let names: Vec<String> = (0..n).map(|i| format!("z{}", "'".repeat(i))).collect();
    let words: Vec<String> = names.windows(2).map(|w| format!("{} {}", w[0], w[1])).collect();
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let g = g.renamed(format!("Q8^{n}"));
    let sub = g.subgroup_of_words(&words)?;
    Ok((g, sub))
}

/// `(mu(Q8^n), mu(Q8^n / N))`.
pub fn neumann_example(n: usize) -> Result<(usize, usize)> {
    let (g, sub) = neumann_group(n)?;
    let (mu, mu_q, _) = check_distinguished(&g, &sub)?;
    Ok((mu, mu_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build_catalog_group;

    #[test]
    fn e2_is_exceptional_at_n() {
        let g = build_catalog_group("E2", 3).unwrap();
        let report = exceptional_scan(&g).unwrap();
        assert_eq!(report.mu, 18);
        assert!(report.is_exceptional());
        let n = g.subgroup_of_words(&["n"]).unwrap();
        let e = report.entry_for(&n).unwrap();
        assert_eq!((e.mu_quotient, e.distinguished), (27, true));
        let normals = lattice::normal_subgroups(&g).unwrap();
        assert_eq!(report.entries.len(), normals.len() - 2);
        assert!(report
            .entries
            .windows(2)
            .all(|w| w[0].order <= w[1].order));
    }

    #[test]
    fn quaternion_is_not_exceptional() {
        let g = build_catalog_group("Q8", 2).unwrap();
        let report = exceptional_scan(&g).unwrap();
        assert!(!report.is_exceptional());
        assert!(report.entries.iter().all(|e| e.mu_quotient <= 8));
    }

    #[test]
    fn distinguished_fast_path() {
        let g = build_catalog_group("E1", 3).unwrap();
        let n = g.subgroup_of_words(&["n"]).unwrap();
        assert_eq!(check_distinguished(&g, &n).unwrap(), (18, 27, true));
        assert_eq!(check_distinguished(&g, &g.whole()).unwrap(), (18, 0, false));
        let x = g.subgroup_of_words(&["x"]).unwrap();
        assert!(matches!(check_distinguished(&g, &x), Err(Error::NotNormal)));
    }

    #[test]
    fn neumann_two() {
        assert_eq!(neumann_example(2).unwrap(), (16, 8));
    }

    #[test]
    fn both_quotient_paths_agree() {
        let g = build_catalog_group("E3", 3).unwrap();
        let n = g.subgroup_of_words(&["n"]).unwrap();
        assert_eq!(quotient_mu_both_ways(&g, &n).unwrap(), (27, 27));
    }
}
