//! Builds groups from the expression grammar and walks the conjugacy
//! classes that the counting invariants are read off from.

use malle::invariant::ExpFunction;
use malle::perm::{GroupExpr, PermGroup};
use malle::DEFAULT_ELEMENT_CAP;

fn main() -> malle::Result<()> {
    let g = PermGroup::build(&GroupExpr::parse("S4")?, DEFAULT_ELEMENT_CAP)?;
    println!("S4: order {}, degree {}", g.order(), g.degree());
    let disc = ExpFunction::discriminant(&g);
    let rad = ExpFunction::radical(&g);
    println!("  class            size  disc  rad");
    for (i, class) in g.classes().list.iter().enumerate() {
        let rep = g.perm(class.rep);
        println!(
            "  {:<16} {:>4}  {:>4}  {:>3}",
            rep.cycle_type(),
            class.members.len(),
            disc.value(i as u32),
            rad.value(i as u32),
        );
    }

    for expr in ["wr(C3,C4)", "x(S3,C4)", "gens:n=4;(0 1 2 3);(1 3)"] {
        let g = PermGroup::build(&GroupExpr::parse(expr)?, DEFAULT_ELEMENT_CAP)?;
        println!(
            "{expr}: order {}, degree {}, {} classes",
            g.order(),
            g.degree(),
            g.classes().list.len()
        );
    }
    Ok(())
}
