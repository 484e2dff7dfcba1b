//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any
//! criterion other than the documented known failure fails, or if the
//! known failure unexpectedly passes.

use std::process::Command;
use std::time::{Duration, Instant};

use mindeg::catalog::build_catalog_group;
use mindeg::claims::{verify, Catalog, Ledger, Tier};
use mindeg::degree::minimal_degree;
use mindeg::exceptional::{exceptional_scan, neumann_example};
use mindeg::lattice;

/// Criteria that cannot hold as written; see the decisions ledger.
const KNOWN_FAILURES: &[&str] = &["neumann.slow.q8_cubed_quotient_is_16"];

struct Outcome {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn claims_pass(ledgers: &[&Ledger], ids: &[String]) -> (bool, String) {
    let mut bad = Vec::new();
    for id in ids {
        let hit = ledgers.iter().find_map(|l| l.get(id).map(|c| (l.prime, c)));
        match hit {
            Some((_, c)) if c.passed => {}
            Some((p, c)) => bad.push(format!("{id}@{p}: {}", c.observed)),
            None => bad.push(format!("{id}: missing")),
        }
    }
    if bad.is_empty() {
        (true, format!("{} claims", ids.len()))
    } else {
        (false, bad.join("; "))
    }
}

fn prefixed(l: &Ledger, prefix: &str, suffix: &str) -> Vec<String> {
    l.claims
        .iter()
        .filter(|c| c.id.starts_with(prefix) && c.id.ends_with(suffix))
        .map(|c| c.id.clone())
        .collect()
}

fn ids(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn cold_verify_json(dir: &std::path::Path) -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_mindeg"))
        .args(["verify", "--p", "3", "--json"])
        .env("MINDEG_CACHE_DIR", dir)
        .output()
        .expect("run mindeg");
    out.stdout
}

fn main() {
    let t = Instant::now();
    let fast3 = verify(&Catalog::builtin(), 3, Tier::Fast).expect("verify p=3");
    let fast_time = t.elapsed();
    let t = Instant::now();
    let slow3 = verify(&Catalog::builtin(), 3, Tier::Slow).expect("verify p=3 slow");
    let slow5 = verify(&Catalog::builtin(), 5, Tier::Slow).expect("verify p=5 slow");
    let slow_time = t.elapsed();

    let mut out: Vec<Outcome> = Vec::new();
    let mut push = |id: &'static str, (passed, detail): (bool, String)| out.push(Outcome { id, passed, detail });

    push("thm5.e_groups_mu_18_distinguished_27", {
        let mut want = Vec::new();
        for e in ["E1", "E2", "E3"] {
            for s in ["mu", "distinguished", "scan"] {
                want.push(format!("thm5.{e}.{s}"));
            }
        }
        let (ok, detail) = claims_pass(&[&fast3], &want);
        // and once more without the ledger
        let direct = ["E1", "E2", "E3"].iter().all(|e| {
            let g = build_catalog_group(e, 3).unwrap();
            let n = g.subgroup_of_words(&["n"]).unwrap();
            let r = exceptional_scan(&g).unwrap();
            r.mu == 18 && r.entry_for(&n).is_some_and(|x| x.distinguished && x.mu_quotient == 27)
        });
        (ok && direct, detail)
    });

    push("thm6.g4_mu_12_not_exceptional", {
        let g = build_catalog_group("G4", 3).unwrap();
        let r = exceptional_scan(&g).unwrap();
        let (ok, detail) = claims_pass(&[&fast3], &ids(&["thm6.G4.mu", "thm3.G4.not_exceptional"]));
        (ok && r.mu == 12 && !r.is_exceptional(), detail)
    });

    push("prop1.order_32_mu_12_quotients_16", claims_pass(
        &[&fast3],
        &ids(&["prop1.G.mu", "prop1.G.distinguished", "prop1.H.mu", "prop1.H.distinguished"]),
    ));

    push("thm5.cores_and_centers", {
        let (ok, detail) = claims_pass(
            &[&fast3],
            &ids(&["thm5.E2.core_yz", "thm5.E2.center", "thm5.E3.core_xy", "thm5.E3.center"]),
        );
        let g = build_catalog_group("E2", 3).unwrap();
        let core = lattice::core(&g, &g.subgroup_of_words(&["y", "z"]).unwrap());
        let direct = core == g.subgroup_of_words(&["z^3"]).unwrap()
            && *g.center() == g.subgroup_of_words(&["x^3", "n"]).unwrap();
        let e3 = build_catalog_group("E3", 3).unwrap();
        let core3 = lattice::core(&e3, &e3.subgroup_of_words(&["x", "y"]).unwrap());
        let direct3 = core3 == e3.subgroup_of_words(&["x^3", "y"]).unwrap();
        (ok && direct && direct3, detail)
    });

    push("wright.additivity_on_pairs", {
        let wright = prefixed(&fast3, "wright.", "");
        let mut want = wright.clone();
        want.extend(ids(&["wright.Q8xQ8", "thm6.HxZp.mu", "thm6.LxZp.mu"]));
        let (ok, detail) = claims_pass(&[&fast3], &want);
        (ok && wright.len() >= 6, format!("{} pairs, {detail}", wright.len()))
    });

    push("neumann.n2_quotient_8_and_mu_16", {
        let (mu, mu_q) = neumann_example(2).unwrap();
        let (ok, _) = claims_pass(&[&fast3], &ids(&["neumann.n2.mu", "neumann.n2.quotient"]));
        (ok && mu == 16 && mu_q == 8, format!("mu(Q8^2) = {mu}, mu(Q8^2/N) = {mu_q}"))
    });

    push("neumann.slow.q8_cubed_quotient_is_16", {
        let c = slow3.get("neumann.n3.quotient").expect("slow claim");
        (c.passed, format!("observed {}, criterion asks {}", c.observed, c.expected))
    });

    push("oracle.equivalence_up_to_81", {
        let want = prefixed(&fast3, "oracle.", "");
        let (ok, detail) = claims_pass(&[&fast3], &want);
        (ok && want.len() >= 10, detail)
    });

    push("johnson.orbits_and_bounds_p3_p5", {
        let mut want = prefixed(&slow3, "thm1.", "");
        want.extend(prefixed(&slow3, "thm2.", ""));
        let (ok3, d3) = claims_pass(&[&slow3], &want);
        let mut want5 = prefixed(&slow5, "thm1.", "");
        want5.extend(prefixed(&slow5, "thm2.", ""));
        let (ok5, d5) = claims_pass(&[&slow5], &want5);
        (ok3 && ok5, format!("p=3 {d3}, p=5 {d5}"))
    });

    push("thm5.quotient_isomorphisms_p3_p5", {
        let want: Vec<String> = ["E1", "E2", "E3"].iter().map(|e| format!("thm5.{e}.quotient_iso")).collect();
        let (ok3, _) = claims_pass(&[&fast3], &want);
        let (ok5, d5) = claims_pass(&[&slow5], &want);
        (ok3 && ok5, d5)
    });

    push("thm6.abelian_normal_order_p3", {
        let want = prefixed(&fast3, "thm6.", ".abelian_normal_p3");
        let direct = ["G1", "G2", "G3", "G4", "E1", "E2", "E3"].iter().all(|n| {
            let g = build_catalog_group(n, 3).unwrap();
            g.order() != 243 || lattice::has_abelian_normal_of_order(&g, 27).unwrap().is_some()
        });
        let (ok, detail) = claims_pass(&[&fast3], &want);
        (ok && direct && want.len() == 3, detail)
    });

    push("determinism.verify_json_two_cold_runs", {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let first = cold_verify_json(a.path());
        let second = cold_verify_json(b.path());
        (!first.is_empty() && first == second, format!("{} bytes", first.len()))
    });

    push("budget.fast_p3_under_5_min_slow_under_60_min", (
        fast_time < Duration::from_secs(300) && slow_time < Duration::from_secs(3600),
        format!("fast p=3 {:.2?}, slow p=3 and p=5 {:.2?}", fast_time, slow_time),
    ));

    push("ledger.everything_else_passes", {
        let stray: Vec<String> = [&fast3, &slow3, &slow5]
            .iter()
            .flat_map(|l| l.claims.iter().filter(|c| !c.passed).map(move |c| format!("{}@{}", c.id, l.prime)))
            .filter(|id| !id.starts_with("neumann.n3.quotient@"))
            .collect();
        (stray.is_empty(), if stray.is_empty() { "no other failures".into() } else { stray.join(", ") })
    });

    // keep the degree of the headline group visible in the log
    let mu = minimal_degree(&build_catalog_group("E2", 3).unwrap()).unwrap();
    println!("acceptance (E2@p=3: mu = {}, orbits = {:?})", mu.degree, mu.orbit_sizes);

    let mut unexpected = 0;
    for o in &out {
        let known = KNOWN_FAILURES.contains(&o.id);
        let tag = if o.passed { "PASS" } else { "FAIL" };
        let note = if known { "  [known failure, see decisions ledger]" } else { "" };
        println!("{tag}  {:<46} {}{note}", o.id, o.detail);
        if o.passed == known {
            unexpected += 1;
        }
    }
    let passed = out.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria pass, {} known failure(s)", out.len(), KNOWN_FAILURES.len());
    if unexpected > 0 {
        eprintln!("{unexpected} criteria differ from the expected outcome");
        std::process::exit(1);
    }
}
