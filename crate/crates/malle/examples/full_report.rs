//! Runs the whole prediction pipeline on one group and prints the report
//! as JSON: a, b_M, b_T, the per-pair table with lift verdicts, the
//! refined b_new, and any closed-form oracle entries.

use malle::invariant::ExpFunction;
use malle::perm::{GroupExpr, PermGroup};
use malle::{predict, BaseField, PredictOptions, DEFAULT_ELEMENT_CAP};

fn main() -> malle::Result<()> {
    let g = PermGroup::build(&GroupExpr::parse("wr(C3,C4)")?, DEFAULT_ELEMENT_CAP)?;
    let f = ExpFunction::radical(&g);
    let report = predict(&g, &f, &BaseField::Q, &PredictOptions::default())?;
    println!("{}", report.to_json());
    Ok(())
}
