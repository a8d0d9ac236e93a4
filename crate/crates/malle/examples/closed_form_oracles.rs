//! Closed formulas for wreath families run as independent oracles against
//! the engine. Agreement confirms both; a mismatch flags the formula and
//! keeps the engine's number, with a note saying which branch went wrong.

use malle::predict::{oracle_square_wreath, oracle_wreath_rad};
use malle::OracleResult;

fn show(tag: &str, entries: &[OracleResult]) {
    println!("{tag}:");
    for e in entries {
        let expected = e.expected.map_or("-".into(), |v| v.to_string());
        let engine = e.engine.map_or("-".into(), |v| v.to_string());
        let flag = if e.agree { "agree" } else { "FLAGGED" };
        print!("  {}({:?}): expected {expected}, engine {engine}, {flag}", e.name, e.params);
        match &e.note {
            Some(note) => println!(" ({note})"),
            None => println!(),
        }
    }
}

fn main() -> malle::Result<()> {
    show("radical wreath formula, in its stated range", &oracle_wreath_rad(5, 4)?);
    show("radical wreath formula, outside it", &oracle_wreath_rad(5, 2)?);
    show("square wreath formulas", &oracle_square_wreath(3)?);
    Ok(())
}
