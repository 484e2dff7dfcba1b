//! Degrees of direct products against the sum of the factors' degrees.

use mindeg::catalog::resolve_ref;
use mindeg::degree::minimal_degree;

fn main() -> mindeg::Result<()> {
    let pairs = [
        ("Q8@p=2", "Q8@p=2"),
        ("D8@p=2", "Zn(4)@p=2"),
        ("H@p=3", "Zn(3)@p=3"),
        ("L@p=3", "Zn(3)@p=3"),
        ("ElemAb(2)@p=5", "ElemAb(2)@p=5"),
    ];
    for (a, b) in pairs {
        let ga = minimal_degree(&resolve_ref(a)?)?.degree;
        let gb = minimal_degree(&resolve_ref(b)?)?.degree;
        let prod = minimal_degree(&resolve_ref(&format!("{a}*{b}"))?)?.degree;
        println!("mu({a} x {b}) = {prod}, sum {}", ga + gb);
    }
    Ok(())
}
