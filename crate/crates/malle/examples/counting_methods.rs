//! Counts the orbits of one pair by every route the crate knows: the
//! direct partition, the class-fusion form, the inverse-twist variant,
//! the Burnside average over the fibered group, and the pole order of
//! the associated Euler product. All five must land on the same number.

use malle::invariant::{d_of, ExpFunction};
use malle::perm::{GroupExpr, PermGroup};
use malle::predict::pole_order;
use malle::twist::{enumerate_pairs, pair_report};
use malle::{CycloGamma, BURNSIDE_CAP, DEFAULT_ELEMENT_CAP};

fn main() -> malle::Result<()> {
    let g = PermGroup::build(&GroupExpr::parse("wr(C3,C4)")?, DEFAULT_ELEMENT_CAP)?;
    let f = ExpFunction::radical(&g);
    let gamma = CycloGamma::rationals(d_of(&g, &f)?);

    for pair in enumerate_pairs(&g, &f, &gamma)? {
        let r = pair_report(&g, &gamma, &pair, BURNSIDE_CAP);
        let m = &r.methods;
        let pole = pole_order(&g, &gamma, &pair, &pair.phis[r.phi_index], BURNSIDE_CAP);
        println!("pair over {} (kernel order {}):", pair.subfield.name, pair.kernel_order());
        println!("  partition      {}", m.partition);
        println!("  class fusion   {}", m.class_fusion);
        println!("  inverse twist  {}", m.variant);
        match m.burnside {
            Some(avg) => println!("  Burnside       {avg}"),
            None => println!("  Burnside       skipped, fibered group over the cap"),
        }
        match pole {
            Some(p) => println!("  pole order     {p}"),
            None => println!("  pole order     skipped, fibered group over the cap"),
        }
        assert!(r.agree, "methods must agree");
    }
    Ok(())
}
