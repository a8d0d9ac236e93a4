//! The same group and invariant over two base fields. Over Q the
//! cyclotomic character group is all of (Z/d)* and embedding obstructions
//! can demote the best pair; over F_q(t) it is the cyclic group generated
//! by q, and every solvable-kernel lift goes through, so the refined
//! prediction climbs back up to b_T.

use malle::invariant::ExpFunction;
use malle::perm::{GroupExpr, PermGroup};
use malle::{predict, BaseField, PredictOptions, DEFAULT_ELEMENT_CAP};

fn main() -> malle::Result<()> {
    let g = PermGroup::build(&GroupExpr::parse("wr(C3,C4)")?, DEFAULT_ELEMENT_CAP)?;
    let f = ExpFunction::discriminant(&g);
    for base in [BaseField::Q, BaseField::FunctionField { q: 5 }] {
        let report = predict(&g, &f, &base, &PredictOptions::default())?;
        let (c, o) = (report.b_new.certified(), report.b_new.optimistic());
        let b_new = if c == o { format!("{c}") } else { format!("[{c}, {o}]") };
        println!(
            "over {base}: a = {}, b_M = {}, b_T = {}, b_new = {b_new}",
            report.a, report.b_m, report.b_t,
        );
    }
    Ok(())
}
