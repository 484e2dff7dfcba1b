//! Subgroup lattice of E2 at p = 3: sizes by order, center, socle and a core.

use mindeg::catalog::build_catalog_group;
use mindeg::lattice::{self, core, socle_minimal_normals};

fn main() -> mindeg::Result<()> {
    let g = build_catalog_group("E2", 3)?;
    let l = lattice::lattice(&g)?;
    println!("{} subgroups in {} conjugacy classes", l.len(), l.classes().len());
    for (order, ids) in l.by_order() {
        let normal = ids.iter().filter(|&&i| l.is_normal(i)).count();
        println!("  order {order:>3}: {:>3} subgroups, {normal} normal", ids.len());
    }

    println!("Z(G) = <{}>", g.format_gens(g.center().gens()));
    for m in socle_minimal_normals(&g) {
        println!("minimal normal <{}>", g.format_gens(m.gens()));
    }

    let yz = g.subgroup_of_words(&["y", "z"])?;
    let k = core(&g, &yz);
    println!("core <y, z> = <{}>", g.format_gens(k.gens()));
    Ok(())
}
