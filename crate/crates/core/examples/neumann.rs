//! Q8^n and its quotient by the "diagonal" central subgroup N. The
//! quotient is extraspecial of order 2^(1+2n), and its degree depends on
//! the parity of n.

use mindeg::exceptional::neumann_group;
use mindeg::exceptional::check_distinguished;
use mindeg::group::quotient_group;

fn main() -> mindeg::Result<()> {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for n in 1..=max {
        let (g, sub) = neumann_group(n)?;
        let (mu, mu_q, up) = check_distinguished(&g, &sub)?;
        let (q, _) = quotient_group(&g, &sub)?;
        let involutions = q.elements().filter(|&x| q.mul(x, x) == 0).count();
        println!(
            "n = {n}: mu(Q8^{n}) = {mu:>2}, |Q8^{n}/N| = {:>3}, mu(Q8^{n}/N) = {mu_q:>2}, x^2 = 1 has {involutions} solutions{}",
            q.order(),
            if up { "  (distinguished)" } else { "" }
        );
    }
    Ok(())
}
