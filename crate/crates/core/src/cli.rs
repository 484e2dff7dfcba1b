//! The `mindeg` command line: `mu`, `exceptional`, `verify`, `subgroups`.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};

use crate::cache::LatticeCache;
use crate::claims::{self, Catalog, Tier};
use crate::degree::minimal_degree;
use crate::error::{Error, Result};
use crate::exceptional::exceptional_scan;
use crate::formats::{resolve_group, CertificateJson, ReportJson};
use crate::group::FiniteGroup;
use crate::lattice;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "mindeg", version, about = "Minimal faithful permutation degrees of small p-groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal faithful permutation degree with its orbit decomposition.
    Mu {
        /// Catalog reference (`E2@p=3`, `Q8@p=2*Q8@p=2`) or group-spec file.
        spec: String,
        #[arg(long)]
        json: bool,
        /// Print the permutation generators in cycle notation.
        #[arg(long)]
        witness: bool,
    },
    /// Scan every nontrivial proper normal subgroup for a larger quotient degree.
    Exceptional {
        spec: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the claims ledger for a prime.
    Verify {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value = "fast")]
        tier: Tier,
        #[arg(long)]
        json: bool,
        /// Replacement presentations, `{"schema": 1, "entries": {"E2@p=3": spec}}`.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Count and list subgroups.
    Subgroups {
        spec: String,
        #[arg(long)]
        normal: bool,
        /// Keep subgroups of this order, written `27` or `3^3`.
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// What a command prints and how the process should exit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub text: String,
    pub json: Option<String>,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(text: String, json: Option<String>) -> Self {
        CommandResult { text, json, exit_code: EXIT_OK }
    }

    /// The text that goes to stdout: JSON when requested, else the table.
    pub fn output(&self) -> &str {
        self.json.as_deref().unwrap_or(&self.text)
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    err.exit_code()
}

/// Groups named on the command line get their lattice from the cache.
fn load(spec: &str) -> Result<Arc<FiniteGroup>> {
    let g = resolve_group(spec)?;
    LatticeCache::from_env().warm(&g)?;
    Ok(g)
}

pub fn cmd_mu(spec: &str, json: bool, witness: bool) -> Result<CommandResult> {
    let g = load(spec)?;
    let cert = minimal_degree(&g)?;
    let mut text = format!("mu = {}, orbits = {:?}\n", cert.degree, cert.orbit_sizes);
    if witness {
        for h in &cert.family {
            text.push_str(&format!("  stabilizer <{}>  index {}\n", g.format_gens(h.gens()), g.order() / h.order()));
        }
        for (name, p) in &cert.permutation_generators {
            text.push_str(&format!("  {name} -> {p}\n"));
        }
    }
    let json = json.then(|| CertificateJson::new(&g, &cert).to_json());
    Ok(CommandResult::ok(text, json))
}

pub fn cmd_exceptional(spec: &str, json: bool) -> Result<CommandResult> {
    let g = load(spec)?;
    let report = exceptional_scan(&g)?;
    let rows: Vec<(String, &crate::exceptional::ExceptionalEntry)> =
        report.entries.iter().map(|e| (format!("<{}>", e.normal), e)).collect();
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(1).max(1);
    let mut text = format!("{}: mu = {}\n", report.group, report.mu);
    text.push_str(&format!("{:width$}  {:>5}  {:>7}  distinguished\n", "N", "|N|", "mu(G/N)"));
    for (n, e) in &rows {
        let mark = if e.distinguished { "yes" } else { "" };
        text.push_str(&format!("{n:width$}  {:>5}  {:>7}  {mark}\n", e.order, e.mu_quotient));
    }
    for e in report.distinguished() {
        text.push_str(&format!("distinguished N = <{}>: {} -> {}\n", e.normal, report.mu, e.mu_quotient));
    }
    text.push_str(if report.is_exceptional() { "EXCEPTIONAL\n" } else { "NOT EXCEPTIONAL\n" });
    let json = json.then(|| ReportJson::new(&g, &report).to_json());
    Ok(CommandResult::ok(text, json))
}

pub fn cmd_verify(p: u32, tier: Tier, json: bool, catalog: Option<&std::path::Path>) -> Result<CommandResult> {
    let cat = match catalog {
        Some(path) => Catalog::with_overrides_file(path)?,
        None => Catalog::builtin(),
    };
    let cat = cat.with_cache(LatticeCache::from_env());
    let ledger = claims::verify(&cat, p, tier)?;
    let mut text = ledger.to_table();
    let failed: Vec<&str> = ledger.claims.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
    if !failed.is_empty() {
        text.push_str(&format!("failed: {}\n", failed.join(", ")));
    }
    Ok(CommandResult {
        text,
        json: json.then(|| ledger.to_json()),
        exit_code: if ledger.all_passed() { EXIT_OK } else { EXIT_FAILED },
    })
}

/// `27` or `3^3`.
pub fn parse_order(s: &str) -> Result<usize> {
    let bad = || Error::Parse(format!("bad order {s:?}"));
    match s.split_once('^') {
        Some((b, e)) => {
            let b: usize = b.trim().parse().map_err(|_| bad())?;
            let e: u32 = e.trim().parse().map_err(|_| bad())?;
            b.checked_pow(e).ok_or_else(bad)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

#[derive(serde::Serialize)]
struct SubgroupJson {
    gens: Vec<String>,
    order: usize,
    normal: bool,
}

#[derive(serde::Serialize)]
struct SubgroupsJson {
    schema: u32,
    group: String,
    count: usize,
    subgroups: Vec<SubgroupJson>,
}

pub fn cmd_subgroups(spec: &str, normal: bool, order: Option<&str>, json: bool) -> Result<CommandResult> {
    let order = order.map(parse_order).transpose()?;
    let g = load(spec)?;
    let l = lattice::lattice(&g)?;
    let ids: Vec<usize> = (0..l.len())
        .filter(|&i| !normal || l.is_normal(i))
        .filter(|&i| order.is_none_or(|k| l.get(i).order() == k))
        .collect();
    let mut text = format!("{} subgroups\n", ids.len());
    for &i in &ids {
        let h = l.get(i);
        let tag = if l.is_normal(i) { "  normal" } else { "" };
        let alias = label_alias(&g, h.gens()).map(|a| format!("  = <{a}>")).unwrap_or_default();
        text.push_str(&format!("  order {:>4}  <{}>{alias}{tag}\n", h.order(), g.format_gens(h.gens())));
    }
    let json = json.then(|| {
        let doc = SubgroupsJson {
            schema: crate::formats::SCHEMA,
            group: g.name().to_string(),
            count: ids.len(),
            subgroups: ids
                .iter()
                .map(|&i| SubgroupJson {
                    gens: l.get(i).gens().iter().map(|&x| g.format_element(x)).collect(),
                    order: l.get(i).order(),
                    normal: l.is_normal(i),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("listing serializes")
    });
    Ok(CommandResult::ok(text, json))
}

/// The generators rewritten as proper powers of the group's letters where
/// possible, e.g. `<c> = <z^3>` in E2. `None` if nothing was rewritten.
fn label_alias(g: &FiniteGroup, gens: &[crate::group::Elem]) -> Option<String> {
    let mut changed = false;
    let words: Vec<String> = gens
        .iter()
        .map(|&x| {
            let hit = g.labels().iter().find_map(|(name, &a)| {
                (2..g.element_order(a))
                    .find(|&k| g.pow(a, k as i64) == x)
                    .map(|k| format!("{name}^{k}"))
            });
            changed |= hit.is_some();
            hit.unwrap_or_else(|| g.format_element(x))
        })
        .collect();
    changed.then(|| words.join(", "))
}

pub fn execute(cli: &Cli) -> Result<CommandResult> {
    match &cli.command {
        Command::Mu { spec, json, witness } => cmd_mu(spec, *json, *witness),
        Command::Exceptional { spec, json } => cmd_exceptional(spec, *json),
        Command::Verify { p, tier, json, catalog } => cmd_verify(*p, *tier, *json, catalog.as_deref()),
        Command::Subgroups { spec, normal, order, json } => cmd_subgroups(spec, *normal, order.as_deref(), *json),
    }
}

/// Parses `args` (including the program name), runs, prints, and returns
/// the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(res) => {
            print!("{}", res.output());
            if res.json.is_some() {
                println!();
            }
            res.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}
