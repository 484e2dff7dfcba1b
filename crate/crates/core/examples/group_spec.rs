//! Group-spec JSON: write one for a catalog group, read it back, and load a
//! hand-written spec from disk.

use mindeg::catalog::catalog_entry;
use mindeg::degree::minimal_degree;
use mindeg::formats::{load_group_spec, GroupSpec};

const EXTRASPECIAL_27: &str = r#"{
  "prime": 3,
  "generators": ["a", "b", "c"],
  "powers": {"a": {"c": 1}},
  "commutators": {"[b,a]": {"c": 1}}
}"#;

fn main() -> mindeg::Result<()> {
    let entry = catalog_entry("G4", 3)?;
    let spec = GroupSpec::from_presentation(&entry.pc_presentation);
    println!("{}", spec.to_json());
    assert_eq!(GroupSpec::from_json(&spec.to_json())?, spec);

    let dir = std::env::temp_dir().join("mindeg-group-spec-example");
    std::fs::create_dir_all(&dir)?;
    let path = dir.join("m27.json");
    std::fs::write(&path, EXTRASPECIAL_27)?;
    let g = load_group_spec(&path)?;
    println!("{}: order {}, mu {}", g.name(), g.order(), minimal_degree(&g)?.degree);
    Ok(())
}
