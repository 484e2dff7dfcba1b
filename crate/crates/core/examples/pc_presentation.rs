//! Build a group from a pc presentation, multiply in it, and see what the
//! consistency check says about a broken presentation.

use mindeg::group::build_pc_group;
use mindeg::pc::{consistency_check, PcPresentation};

fn main() -> mindeg::Result<()> {
    // Heisenberg group mod 3: [y,x] = z, z central
    let pres = PcPresentation::new(3, ["x", "y", "z"]).comm("y", "x", "z")?;
    println!("consistent: {}", consistency_check(&pres).passed());

    let g = build_pc_group(pres)?;
    let (x, y) = (g.eval("x")?, g.eval("y")?);
    println!("|G| = {}, exponent {}", g.order(), g.exponent());
    println!("x*y = {}, y*x = {}", g.format_element(g.mul(x, y)), g.format_element(g.mul(y, x)));
    println!("[x,y] = {}", g.format_element(g.comm(x, y)));

    // b normalized by a with b^a = b^2, but a has order 3 and 2^3 != 1 mod 3
    let bad = PcPresentation::new(3, ["a", "b"]).comm("b", "a", "b")?;
    match consistency_check(&bad) {
        mindeg::pc::ConsistencyReport::Pass => println!("unexpectedly consistent"),
        mindeg::pc::ConsistencyReport::Fail(w) => println!("inconsistent: {w}"),
    }
    Ok(())
}
