//! The acceptance checklist: every published value the engine must
//! reproduce, runnable one check at a time or as a suite.
//!
//! Each check recomputes its numbers from scratch through the public
//! entry points and compares against frozen expectations. Closed-form
//! discrepancies that are themselves expectations (the flagged formulas)
//! count as passes only when the flag shows up exactly as recorded.

use crate::abelian::BaseField;
use crate::arith::gcd;
use crate::embed::{embed_cyclic, Place, Verdict};
use crate::invariant::{d_of, ExpFunction};
use crate::oracle;
use crate::perm::{ElemId, GroupExpr, PermGroup};
use crate::predict::{
    kernel_fixes_blocks, oracle_square_wreath, oracle_wreath_disc, pole_order, predict,
    PredictOptions,
};
use crate::twist::{coarse_count, enumerate_pairs, pair_report, PiPhiPair};
use crate::{CycloGamma, Error, PredictionReport, Result, BNew, BURNSIDE_CAP, DEFAULT_ELEMENT_CAP};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Result of one acceptance check.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub id: &'static str,
    pub passed: bool,
    /// Key numbers on success, every mismatch on failure.
    pub detail: String,
}

/// Check ids in suite order.
pub const CHECK_IDS: [&str; 9] = [
    "rad-pair-table",
    "merged-pair-census",
    "disc-grid",
    "base-swap",
    "embedding-table",
    "rad-exceeds-bm",
    "method-agreement",
    "oracle-flags",
    "coarse-monotone",
];

/// Runs the whole checklist, or a single check by id.
pub fn run(only: Option<&str>) -> Result<Vec<CheckOutcome>> {
    if let Some(id) = only {
        if !CHECK_IDS.contains(&id) {
            return Err(Error::Precondition(format!(
                "unknown check id {id}; expected one of {}",
                CHECK_IDS.join(", ")
            )));
        }
    }
    let mut out = Vec::new();
    for id in CHECK_IDS {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let check = match id {
            "rad-pair-table" => rad_pair_table,
            "merged-pair-census" => merged_pair_census,
            "disc-grid" => disc_grid,
            "base-swap" => base_swap,
            "embedding-table" => embedding_table,
            "rad-exceeds-bm" => rad_exceeds_bm,
            "method-agreement" => method_agreement,
            "oracle-flags" => oracle_flags,
            "coarse-monotone" => coarse_monotone,
            _ => unreachable!(),
        };
        out.push(check()?);
    }
    Ok(out)
}

/// A group with everything the checks ask of it, computed once.
struct Computed {
    g: PermGroup,
    gamma: CycloGamma,
    pairs: Vec<PiPhiPair>,
    report: PredictionReport,
}

/// Configs computed so far, shared across checks for the life of the
/// process: the suite revisits the same groups many times.
static CACHE: OnceLock<Mutex<HashMap<String, Arc<Computed>>>> = OnceLock::new();

fn cache() -> &'static Mutex<HashMap<String, Arc<Computed>>> {
    CACHE.get_or_init(Default::default)
}

fn cache_key(expr: &str, rad: bool, base: &BaseField) -> String {
    let inv = if rad { "rad" } else { "disc" };
    format!("{expr}|{inv}|{base}")
}

fn compute(expr: &str, rad: bool, base: &BaseField) -> Result<Computed> {
    let g = PermGroup::build(&GroupExpr::parse(expr)?, DEFAULT_ELEMENT_CAP)?;
    let f = if rad { ExpFunction::radical(&g) } else { ExpFunction::discriminant(&g) };
    let report = predict(&g, &f, base, &PredictOptions::default())?;
    let d = d_of(&g, &f)?;
    let gamma = match base {
        BaseField::Q => CycloGamma::rationals(d),
        BaseField::FunctionField { q } => CycloGamma::function_field(*q, d)?,
    };
    let pairs = enumerate_pairs(&g, &f, &gamma)?;
    Ok(Computed { g, gamma, pairs, report })
}

fn cached(expr: &str, rad: bool, base: &BaseField) -> Result<Arc<Computed>> {
    let key = cache_key(expr, rad, base);
    if let Some(c) = cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(c));
    }
    let c = Arc::new(compute(expr, rad, base)?);
    Ok(Arc::clone(cache().lock().unwrap().entry(key).or_insert(c)))
}

/// Builds every missing config in parallel before a check walks them.
fn prewarm(configs: &[(String, bool, BaseField)]) -> Result<()> {
    let missing: Vec<&(String, bool, BaseField)> = {
        let map = cache().lock().unwrap();
        configs.iter().filter(|(e, r, b)| !map.contains_key(&cache_key(e, *r, b))).collect()
    };
    let built: Vec<(String, Result<Computed>)> =
        missing.par_iter().map(|(e, r, b)| (cache_key(e, *r, b), compute(e, *r, b))).collect();
    let mut map = cache().lock().unwrap();
    for (key, c) in built {
        map.entry(key).or_insert(Arc::new(c?));
    }
    Ok(())
}

macro_rules! check {
    ($fails:expr, $cond:expr, $($arg:tt)+) => {
        if !$cond {
            $fails.push(format!($($arg)+));
        }
    };
}

fn outcome(id: &'static str, fails: Vec<String>, ok: String) -> CheckOutcome {
    CheckOutcome { id, passed: fails.is_empty(), detail: if fails.is_empty() { ok } else { fails.join("; ") } }
}

fn rad_pair_table() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let c = cached("wr(C3,C4)", true, &BaseField::Q)?;
    let want = [("Q", 19), ("Q(i)", 17), ("Q(\u{221a}3)", 17), ("Q(\u{3bc}3)", 29)];
    check!(fails, c.report.pairs.len() == 4, "expected 4 pairs, got {}", c.report.pairs.len());
    for (name, b) in want {
        match c.report.pairs.iter().find(|p| p.subfield.name == name) {
            Some(p) => check!(fails, p.b == b, "{name}: expected {b}, got {}", p.b),
            None => fails.push(format!("missing pair {name}")),
        }
    }
    check!(fails, c.report.b_m == 19, "b_M: expected 19, got {}", c.report.b_m);
    check!(fails, c.report.b_t == 29, "b_T: expected 29, got {}", c.report.b_t);
    Ok(outcome(
        "rad-pair-table",
        fails,
        "pair counts Q: 19, Q(i): 17, Q(\u{221a}3): 17, Q(\u{3bc}3): 29; b_M = 19, b_T = 29".into(),
    ))
}

fn merged_pair_census() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let c = cached("wr(C4,C4)", true, &BaseField::Q)?;
    check!(fails, c.report.pairs.len() == 26, "expected 26 pairs, got {}", c.report.pairs.len());
    let mut mu16: Vec<u64> = c
        .report
        .pairs
        .iter()
        .filter(|p| p.subfield.name == "Q(\u{3bc}16)")
        .map(|p| p.b)
        .collect();
    mu16.sort_unstable();
    check!(fails, mu16 == [21, 23, 23], "Q(\u{3bc}16) counts: expected [21, 23, 23], got {mu16:?}");
    check!(fails, c.report.b_t == 79, "b_T: expected 79, got {}", c.report.b_t);
    let top = &c.report.pairs[c.report.b_t_witness];
    check!(
        fails,
        top.subfield.name == "Q(i)" && top.kernel_order == 512,
        "maximum at {} with kernel order {}, expected Q(i) with 512",
        top.subfield.name,
        top.kernel_order
    );
    Ok(outcome(
        "merged-pair-census",
        fails,
        "26 pairs; Q(\u{3bc}16) counts {21, 23, 23}; maximum 79 at Q(i), kernel order 512".into(),
    ))
}

fn grid_cells() -> Result<(Vec<(u64, u64, String)>, usize)> {
    let mut cells = Vec::new();
    let mut skipped = 0;
    for ell in [3u64, 5, 7] {
        for d in 2u64..=9 {
            let expr = format!("wr(C{ell},C{d})");
            let within = GroupExpr::parse(&expr)?
                .predicted_order()
                .is_some_and(|o| o <= DEFAULT_ELEMENT_CAP as u128);
            if within {
                cells.push((ell, d, expr));
            } else {
                skipped += 1;
            }
        }
    }
    Ok((cells, skipped))
}

fn disc_grid() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let (cells, skipped) = grid_cells()?;
    let configs: Vec<(String, bool, BaseField)> =
        cells.iter().map(|(_, _, e)| (e.clone(), false, BaseField::Q)).collect();
    prewarm(&configs)?;
    for (ell, d, expr) in &cells {
        let c = cached(expr, false, &BaseField::Q)?;
        let want = gcd(*d, ell - 1);
        check!(fails, c.report.b_t == want, "{expr}: b_T expected {want}, got {}", c.report.b_t);
        check!(fails, c.report.b_m == 1, "{expr}: b_M expected 1, got {}", c.report.b_m);
    }
    Ok(outcome(
        "disc-grid",
        fails,
        format!(
            "{} cells match b_T = gcd(d, l-1) and b_M = 1; {skipped} cells over the element cap",
            cells.len()
        ),
    ))
}

fn base_swap() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let over_q = cached("wr(C3,C4)", false, &BaseField::Q)?;
    let over_f5 = cached("wr(C3,C4)", false, &BaseField::FunctionField { q: 5 })?;
    check!(
        fails,
        over_f5.report.b_t == 2 && over_f5.report.b_new == BNew::Single(2),
        "over F5(t): expected b_new = b_T = 2, got b_T = {}, b_new = {:?}",
        over_f5.report.b_t,
        over_f5.report.b_new
    );
    check!(
        fails,
        over_q.report.b_new == BNew::Single(1),
        "over Q: expected b_new = 1, got {:?}",
        over_q.report.b_new
    );
    Ok(outcome(
        "base-swap",
        fails,
        "disc over F5(t) gives b_new = b_T = 2; over Q the obstructions leave b_new = 1".into(),
    ))
}

fn embedding_table() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let rows: [(u64, u64, u64, &[Place]); 6] = [
        (3, 2, 4, &[Place::Finite(3), Place::Infinity]),
        (7, 3, 3, &[]),
        (13, 4, 4, &[]),
        (5, 4, 4, &[]),
        (5, 2, 8, &[Place::Finite(5)]),
        (7, 3, 9, &[Place::Finite(7)]),
    ];
    for (ell, n, d, places) in rows {
        let status = embed_cyclic(ell, n, d)?;
        let want = if places.is_empty() { Verdict::Liftable } else { Verdict::Obstructed };
        check!(
            fails,
            status.verdict == want && status.places == places,
            "({ell},{n},{d}): expected {want} at {places:?}, got {} at {:?}",
            status.verdict,
            status.places
        );
        let scan = oracle::embed_by_enumeration(ell, n, d);
        check!(
            fails,
            scan.at_ell != status.places.contains(&Place::Finite(ell))
                && scan.at_infinity != status.places.contains(&Place::Infinity),
            "({ell},{n},{d}): enumeration witnesses (at {ell}: {}, at infinity: {}), criterion obstructs {:?}",
            scan.at_ell,
            scan.at_infinity,
            status.places
        );
    }
    Ok(outcome(
        "embedding-table",
        fails,
        "6 rows match the local criterion and the element-enumeration oracle".into(),
    ))
}

fn rad_exceeds_bm() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let c5 = cached("wr(C5,C4)", true, &BaseField::Q)?;
    match c5.report.pairs.iter().find(|p| p.subfield.name == "Q(\u{3bc}5)") {
        Some(p) => {
            check!(fails, p.b == 164, "Q(\u{3bc}5) pair: expected 164, got {}", p.b);
            check!(fails, p.b > c5.report.b_m, "Q(\u{3bc}5) pair {} <= b_M {}", p.b, c5.report.b_m);
        }
        None => fails.push("missing Q(\u{3bc}5) pair".into()),
    }
    let orbit = oracle::vector_orbit_count(5, 4);
    check!(fails, orbit == 164, "vector enumeration: expected 164, got {orbit}");
    let c9 = cached("wr(C9,C3)", true, &BaseField::Q)?;
    match c9
        .pairs
        .iter()
        .zip(&c9.report.pairs)
        .find(|(p, r)| r.kernel_order == 729 && kernel_fixes_blocks(&c9.g, p, 3))
    {
        Some((_, r)) => {
            check!(
                fails,
                r.subfield.degree == 3 && r.b > c9.report.b_m,
                "degree-{} pair count {} must exceed b_M {}",
                r.subfield.degree,
                r.b,
                c9.report.b_m
            );
        }
        None => fails.push("missing base pair of wr(C9,C3)".into()),
    }
    Ok(outcome(
        "rad-exceeds-bm",
        fails,
        format!(
            "164 > b_M = {} for wr(C5,C4); base pair 124 > b_M = {} for wr(C9,C3)",
            c5.report.b_m, c9.report.b_m
        ),
    ))
}

fn method_agreement() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let mut configs: Vec<(String, bool, BaseField)> = vec![
        ("wr(C3,C4)".into(), true, BaseField::Q),
        ("wr(C3,C4)".into(), false, BaseField::Q),
        ("wr(C3,C4)".into(), false, BaseField::FunctionField { q: 5 }),
        ("wr(C4,C4)".into(), true, BaseField::Q),
        ("wr(C5,C4)".into(), true, BaseField::Q),
        ("wr(C9,C3)".into(), true, BaseField::Q),
    ];
    for (_, _, expr) in grid_cells()?.0 {
        configs.push((expr, false, BaseField::Q));
    }
    prewarm(&configs)?;
    let mut pairs_seen = 0;
    let mut fully_crossed = 0;
    for (expr, rad, base) in &configs {
        let c = cached(expr, *rad, base)?;
        check!(
            fails,
            c.report.b_m <= c.report.b_new.certified()
                && c.report.b_new.optimistic() <= c.report.b_t,
            "{expr}: b_M {} <= b_new {:?} <= b_T {} violated",
            c.report.b_m,
            c.report.b_new,
            c.report.b_t
        );
        let per_pair: Vec<(usize, Vec<String>)> = c
            .pairs
            .par_iter()
            .map(|pair| {
                let mut bad = Vec::new();
                let r = pair_report(&c.g, &c.gamma, pair, BURNSIDE_CAP);
                let m = &r.methods;
                if !(r.agree && m.class_fusion == m.partition && m.variant == m.partition) {
                    bad.push(format!(
                        "{expr} {}: partition {} fusion {} variant {} burnside {:?}",
                        pair.subfield.name, m.partition, m.class_fusion, m.variant, m.burnside
                    ));
                }
                let pole =
                    pole_order(&c.g, &c.gamma, pair, &pair.phis[r.phi_index], BURNSIDE_CAP);
                let crossed = match (m.burnside, pole) {
                    (Some(avg), Some(p)) => {
                        if !(avg == r.count && p == r.count) {
                            bad.push(format!(
                                "{expr} {}: burnside {avg}, pole {p}, partition {}",
                                pair.subfield.name, r.count
                            ));
                        }
                        1
                    }
                    (None, None) => 0,
                    (b, p) => {
                        bad.push(format!(
                            "{expr} {}: burnside {b:?} and pole {p:?} disagree about the cap",
                            pair.subfield.name
                        ));
                        0
                    }
                };
                (crossed, bad)
            })
            .collect();
        for (crossed, bad) in per_pair {
            fully_crossed += crossed;
            fails.extend(bad);
            pairs_seen += 1;
        }
    }
    Ok(outcome(
        "method-agreement",
        fails,
        format!(
            "{pairs_seen} pairs across {} reports agree on every counting route; {fully_crossed} also ran the fibered average and pole order",
            configs.len()
        ),
    ))
}

fn oracle_flags() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let sq = oracle_square_wreath(3)?;
    check!(fails, sq.len() == 3, "expected 3 square-wreath entries, got {}", sq.len());
    if sq.len() == 3 {
        check!(
            fails,
            !sq[0].agree
                && sq[0].expected.is_none()
                && sq[0].note.as_deref().is_some_and(|n| n.contains("854/18")),
            "printed-average entry: expected flagged 854/18, got {:?} note {:?}",
            sq[0].expected,
            sq[0].note
        );
        check!(
            fails,
            sq[1].agree && sq[1].expected == Some(46) && sq[1].engine == Some(46),
            "corrected entry: expected 46 = 46, got {:?} vs {:?}",
            sq[1].expected,
            sq[1].engine
        );
        check!(
            fails,
            sq[2].agree && sq[2].expected == Some(122) && sq[2].engine == Some(124),
            "floor entry: expected pair count 124 >= 122, got {:?} vs {:?}",
            sq[2].expected,
            sq[2].engine
        );
    }
    let disc = oracle_wreath_disc(5, 8)?;
    check!(fails, disc.len() == 2, "expected 2 wreath-disc entries, got {}", disc.len());
    if disc.len() == 2 {
        check!(
            fails,
            disc[0].agree && disc[0].expected == Some(4),
            "closed b_T entry: expected agreeing 4, got {:?} vs {:?}",
            disc[0].expected,
            disc[0].engine
        );
        check!(
            fails,
            !disc[1].agree
                && disc[1].expected == Some(2)
                && disc[1].engine == Some(1)
                && disc[1].note.is_some(),
            "lifted entry: expected flagged 2 vs 1, got {:?} vs {:?}",
            disc[1].expected,
            disc[1].engine
        );
    }
    Ok(outcome(
        "oracle-flags",
        fails,
        "printed average 854/18 flagged with corrected count 46 confirmed; lifted closed form 2 vs certified 1 flagged".into(),
    ))
}

fn coarse_monotone() -> Result<CheckOutcome> {
    let mut fails = Vec::new();
    let pool = [
        "wr(C3,C4)",
        "wr(C4,C4)",
        "wr(C5,C2)",
        "wr(C3,C2)",
        "wr(C2,C3)",
        "wr(C2,C4)",
        "wr(C6,C2)",
        "wr(C2,C5)",
        "wr(C7,C2)",
        "wr(C3,C3)",
        "S4",
        "S3",
        "x(S3,C4)",
        "C12",
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2026);
    let draws: Vec<(&str, bool)> = (0..20)
        .map(|_| (pool[rng.random_range(0..pool.len())], rng.random_bool(0.5)))
        .collect();
    let configs: Vec<(String, bool, BaseField)> =
        draws.iter().map(|(e, r)| (e.to_string(), *r, BaseField::Q)).collect();
    prewarm(&configs)?;
    for (trial, &(expr, rad)) in draws.iter().enumerate() {
        let c = cached(expr, rad, &BaseField::Q)?;
        let pi = rng.random_range(0..c.pairs.len());
        let pair = &c.pairs[pi];
        let fi = rng.random_range(0..pair.phis.len());
        let phi = &pair.phis[fi];
        let whole = coarse_count(&c.g, &c.gamma, pair, phi, &[], pair.min_set());
        check!(
            fails,
            whole == c.report.pairs[pi].orbit.per_phi[fi],
            "trial {trial} {expr}: count {whole} differs from the report's {}",
            c.report.pairs[pi].orbit.per_phi[fi]
        );
        let cutter = &c.pairs[rng.random_range(0..c.pairs.len())];
        let inner: Vec<ElemId> = pair
            .min_set()
            .iter()
            .copied()
            .filter(|&x| cutter.project(x) == 0)
            .collect();
        let refined = coarse_count(&c.g, &c.gamma, pair, phi, &[], &inner);
        check!(
            fails,
            refined <= whole,
            "trial {trial} {expr} {} cut by {}: {refined} > {whole}",
            pair.subfield.name,
            cutter.subfield.name
        );
    }
    Ok(outcome(
        "coarse-monotone",
        fails,
        "20 seeded refinements kept the finer count at or below the pair's own".into(),
    ))
}
