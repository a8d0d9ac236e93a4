//! Decides local solvability of cyclic embedding problems: can a degree-n
//! cyclic field inside Q(mu_d) be embedded in a degree-ln cyclic one? The
//! criterion works place by place; an obstruction at any place kills the
//! lift, and that is what demotes a pair in the refined prediction.

use malle::embed::embed_cyclic;

fn main() -> malle::Result<()> {
    let rows = [(3u64, 2u64, 4u64), (7, 3, 3), (13, 4, 4), (5, 4, 4), (5, 2, 8), (7, 3, 9)];
    println!("  l  n  d   outcome");
    for (ell, n, d) in rows {
        let status = embed_cyclic(ell, n, d)?;
        println!(" {ell:>2} {n:>2} {d:>2}   {status}");
    }
    Ok(())
}
