//! Liftability of a cyclotomic character through a quotient map: can the
//! subfield cut out by `φ` sit inside an actual `G`-extension of the base?
//!
//! Three criteria decide, in order of strength. Over a rational function
//! field a solvable kernel settles the question outright. Over `Q` the
//! problem is local: at each tamely ramified prime and at infinity the
//! quotient map must admit a lift of the right order. For abelian groups
//! the local answers are decisive; for a wreath product with cyclic top
//! and a prime-conductor subfield they reduce to a closed form on the top
//! quotient; otherwise they are only necessary, so a clean scan stays
//! `Unknown` rather than claiming existence.

use crate::abelian::{AbelianGroup, BaseField, CycloGamma, Hom};
use crate::arith::{crt, factorize, gcd, is_prime, primitive_root, valuation};
use crate::perm::{ElemId, GroupExpr, PermGroup};
use crate::twist::PiPhiPair;
use crate::{Error, Result};
use std::fmt;

/// A place of `Q` where an embedding problem can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl serde::Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Place::Finite(p) => s.serialize_u64(*p),
            Place::Infinity => s.serialize_str("infinity"),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Liftable,
    Obstructed,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Liftable => "liftable",
            Verdict::Obstructed => "obstructed",
            Verdict::Unknown => "unknown",
        };
        f.write_str(s)
    }
}

/// Which criterion produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftRule {
    /// Solvable kernel over a function field.
    FunctionField,
    /// Local solvability everywhere, decisive for abelian groups over `Q`.
    AbelianLocal,
    /// Closed-form test on the cyclic top quotient of a wreath product.
    WreathReduction,
    /// Local conditions on abelian quotients, necessary but not sufficient.
    AbelianQuotientNecessary,
    /// Nothing to decide (the trivial pair).
    None,
}

impl fmt::Display for LiftRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LiftRule::FunctionField => "function-field",
            LiftRule::AbelianLocal => "abelian-local",
            LiftRule::WreathReduction => "wreath-reduction",
            LiftRule::AbelianQuotientNecessary => "abelian-quotient-necessary",
            LiftRule::None => "none",
        };
        f.write_str(s)
    }
}

/// Outcome of a liftability check. `Obstructed` always names at least one
/// failing place; `Unknown` keeps a human-readable reason out of the JSON.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct LiftStatus {
    pub verdict: Verdict,
    pub places: Vec<Place>,
    pub rule: LiftRule,
    #[serde(skip)]
    pub reason: Option<String>,
}

impl LiftStatus {
    fn liftable(rule: LiftRule) -> Self {
        LiftStatus { verdict: Verdict::Liftable, places: Vec::new(), rule, reason: None }
    }

    fn obstructed(places: Vec<Place>, rule: LiftRule) -> Self {
        debug_assert!(!places.is_empty());
        LiftStatus { verdict: Verdict::Obstructed, places, rule, reason: None }
    }

    fn unknown(reason: &str, rule: LiftRule) -> Self {
        LiftStatus {
            verdict: Verdict::Unknown,
            places: Vec::new(),
            rule,
            reason: Some(reason.to_owned()),
        }
    }
}

impl fmt::Display for LiftStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Liftable => f.write_str("liftable"),
            Verdict::Obstructed => {
                f.write_str("obstructed: ")?;
                for (i, p) in self.places.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
            Verdict::Unknown => match &self.reason {
                Some(r) => write!(f, "unknown ({r})"),
                None => f.write_str("unknown"),
            },
        }
    }
}

/// Decides whether the degree-`n` subfield of `Q(μ_ell)` embeds into some
/// cyclic `C_d`-extension of `Q`.
///
/// At the prime `ell` the extension must ramify with inertia of order `n`
/// inside `C_d`, which works exactly when `ell ≡ 1 mod p^v(d)` for every
/// prime `p | n`. At infinity an imaginary subfield forces complex
/// conjugation onto the order-2 element of `C_n`, which must come from an
/// involution of `C_d`, so the 2-parts of `d` and `n` must agree. Real
/// subfields and `n = 1` impose nothing further.
pub fn embed_cyclic(ell: u64, n: u64, d: u64) -> Result<LiftStatus> {
    if ell < 3 || ell % 2 == 0 || !is_prime(ell) {
        return Err(Error::Precondition(format!("conductor {ell} is not an odd prime")));
    }
    if n == 0 || d == 0 || gcd(d, ell - 1) % n != 0 {
        return Err(Error::Precondition(format!(
            "no degree-{n} subfield pairing between Q(mu_{ell}) and C_{d}"
        )));
    }
    let mut places = Vec::new();
    if factorize(n).iter().any(|&(p, _)| (ell - 1) % p.pow(valuation(d, p)) != 0) {
        places.push(Place::Finite(ell));
    }
    let real = (ell - 1) / 2 % n == 0;
    if !real && valuation(d, 2) != valuation(n, 2) {
        places.push(Place::Infinity);
    }
    Ok(if places.is_empty() {
        LiftStatus::liftable(LiftRule::WreathReduction)
    } else {
        LiftStatus::obstructed(places, LiftRule::WreathReduction)
    })
}

/// Whether the subgroup with the given members has a derived series
/// reaching the identity.
pub fn solvable(g: &PermGroup, members: &[ElemId]) -> bool {
    let mut cur = members.to_vec();
    loop {
        if cur.len() <= 1 {
            return true;
        }
        let next = g.derived_subgroup(&cur);
        if next.len() == cur.len() {
            return false;
        }
        cur = next;
    }
}

/// Liftability of one surjection of the pair.
///
/// Surjections sharing a kernel can twist the local images differently, so
/// the refined prediction asks per surjection; [`lift_status`] aggregates.
pub fn surjection_lift(g: &PermGroup, gamma: &CycloGamma, pair: &PiPhiPair, phi: &Hom) -> LiftStatus {
    if pair.is_trivial() {
        return LiftStatus::liftable(LiftRule::None);
    }
    if matches!(gamma.base, BaseField::FunctionField { .. }) {
        return if solvable(g, &pair.kernel().members) {
            LiftStatus::liftable(LiftRule::FunctionField)
        } else {
            LiftStatus::unknown("kernel is not solvable", LiftRule::FunctionField)
        };
    }
    if g.commutator_subgroup().order() == 1 {
        let scan = local_scan(g, gamma, pair, phi);
        return if !scan.failed.is_empty() {
            LiftStatus::obstructed(scan.failed, LiftRule::AbelianLocal)
        } else if scan.wild {
            LiftStatus::unknown("wild case out of scope", LiftRule::AbelianLocal)
        } else {
            LiftStatus::liftable(LiftRule::AbelianLocal)
        };
    }
    if let Some(status) = wreath_reduction(g, pair) {
        return status;
    }
    let scan = local_scan(g, gamma, pair, phi);
    if !scan.failed.is_empty() {
        LiftStatus::obstructed(scan.failed, LiftRule::AbelianQuotientNecessary)
    } else if scan.wild {
        LiftStatus::unknown("wild case out of scope", LiftRule::AbelianQuotientNecessary)
    } else {
        LiftStatus::unknown("necessary local conditions all pass", LiftRule::AbelianQuotientNecessary)
    }
}

/// Aggregated liftability of a pair over its merged surjections: liftable
/// if any surjection lifts, otherwise unknown if any is undecided,
/// otherwise obstructed at the union of the failing places.
pub fn lift_status(g: &PermGroup, gamma: &CycloGamma, pair: &PiPhiPair) -> LiftStatus {
    let per: Vec<LiftStatus> = pair.phis.iter().map(|phi| surjection_lift(g, gamma, pair, phi)).collect();
    if let Some(s) = per.iter().find(|s| s.verdict == Verdict::Liftable) {
        return s.clone();
    }
    if let Some(s) = per.iter().find(|s| s.verdict == Verdict::Unknown) {
        return s.clone();
    }
    let rule = per[0].rule;
    let mut places: Vec<Place> = per.into_iter().flat_map(|s| s.places).collect();
    places.sort_unstable();
    places.dedup();
    LiftStatus::obstructed(places, rule)
}

/// The closed-form reduction for `G = T wr C_m` when the kernel contains
/// the base `T^m` and the subfield has odd prime conductor: the subfield
/// then lies in the fixed field of a quotient of the top `C_m`, and any
/// cyclic `C_m`-extension extends to a full wreath extension.
fn wreath_reduction(g: &PermGroup, pair: &PiPhiPair) -> Option<LiftStatus> {
    let GroupExpr::Wreath(_, top) = g.expr() else { return None };
    let GroupExpr::Cyclic(m) = **top else { return None };
    let ell = pair.subfield.conductor;
    if ell < 3 || ell % 2 == 0 || !is_prime(ell) || !base_inside_kernel(g, pair, m) {
        return None;
    }
    embed_cyclic(ell, pair.subfield.degree, m as u64).ok()
}

fn base_inside_kernel(g: &PermGroup, pair: &PiPhiPair, top: u32) -> bool {
    let block = g.degree() / top as usize;
    let base_order = g.order() / top as usize;
    let fixing = pair
        .kernel()
        .members
        .iter()
        .filter(|&&m| {
            g.elem(m).iter().enumerate().all(|(i, &p)| p as usize / block == i / block)
        })
        .count();
    fixing == base_order
}

struct LocalScan {
    failed: Vec<Place>,
    wild: bool,
}

/// Checks the pair's local conditions on the abelianization of `G`.
///
/// Coarser abelian quotients only weaken the conditions, so the finest one
/// carries the whole scan. At a tame prime `p` of the subfield's conductor
/// the quotient map must lift the inertia generator's image to an element
/// of order dividing `p - 1`; at infinity the image of complex conjugation
/// needs a lift of order dividing 2. A prime whose square divides the
/// conductor while also dividing `|G|` is wildly ramified and is skipped,
/// leaving the scan inconclusive rather than wrong.
fn local_scan(g: &PermGroup, gamma: &CycloGamma, pair: &PiPhiPair, phi: &Hom) -> LocalScan {
    let (ab, _) = g.abelianization();
    let to_quot: Vec<u32> = ab.labels().iter().map(|&r| pair.project(r as ElemId)).collect();
    let mut failed = Vec::new();
    let mut wild = false;
    for (p, v) in factorize(pair.subfield.conductor) {
        if p == 2 || (v >= 2 && g.order() as u64 % p == 0) {
            wild = true;
            continue;
        }
        let pk = p.pow(valuation(gamma.modulus, p));
        let residue = crt(primitive_root(pk), pk, 1, gamma.modulus / pk);
        let gi = gamma.group.index_of_label(residue).expect("inertia generator is a unit");
        if !lifts_to(ab, &to_quot, phi.map[gi as usize], p - 1) {
            failed.push(Place::Finite(p));
        }
    }
    let conj = gamma.neg_one().expect("complex conjugation acts over Q");
    if !lifts_to(ab, &to_quot, phi.map[conj as usize], 2) {
        failed.push(Place::Infinity);
    }
    LocalScan { failed, wild }
}

fn lifts_to(ab: &AbelianGroup, to_quot: &[u32], target: u32, max_order: u64) -> bool {
    (0..ab.order() as u32).any(|x| to_quot[x as usize] == target && max_order % ab.elem_order(x) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::divisors;
    use crate::invariant::{d_of, ExpFunction};
    use crate::oracle::embed_by_enumeration;
    use crate::twist::enumerate_pairs;
    use crate::DEFAULT_ELEMENT_CAP;

    fn group(expr: &str) -> PermGroup {
        PermGroup::build(&GroupExpr::parse(expr).unwrap(), DEFAULT_ELEMENT_CAP).unwrap()
    }

    #[test]
    fn cyclic_embedding_reference_values() {
        let cases: &[(u64, u64, u64, Verdict, &[Place])] = &[
            (3, 2, 4, Verdict::Obstructed, &[Place::Finite(3), Place::Infinity]),
            (7, 3, 3, Verdict::Liftable, &[]),
            (5, 4, 4, Verdict::Liftable, &[]),
            (5, 2, 8, Verdict::Obstructed, &[Place::Finite(5)]),
            (13, 4, 4, Verdict::Liftable, &[]),
            (7, 3, 9, Verdict::Obstructed, &[Place::Finite(7)]),
        ];
        for &(ell, n, d, verdict, places) in cases {
            let s = embed_cyclic(ell, n, d).unwrap();
            assert_eq!(s.verdict, verdict, "embed_cyclic({ell}, {n}, {d})");
            assert_eq!(s.places, places, "embed_cyclic({ell}, {n}, {d})");
        }
        assert!(embed_cyclic(3, 2, 5).is_err());
        assert!(embed_cyclic(9, 2, 4).is_err());
        assert!(embed_cyclic(2, 1, 4).is_err());
    }

    #[test]
    fn cyclic_embedding_matches_exhaustive_scan() {
        for ell in [3u64, 5, 7, 11, 13] {
            for d in 1..=24 {
                for n in divisors(gcd(d, ell - 1)) {
                    let s = embed_cyclic(ell, n, d).unwrap();
                    let scan = embed_by_enumeration(ell, n, d);
                    assert_eq!(
                        s.places.contains(&Place::Finite(ell)),
                        !scan.at_ell,
                        "place {ell} for ({ell}, {n}, {d})"
                    );
                    assert_eq!(
                        s.places.contains(&Place::Infinity),
                        !scan.at_infinity,
                        "infinity for ({ell}, {n}, {d})"
                    );
                    if n == 1 {
                        assert_eq!(s.verdict, Verdict::Liftable);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_condition_is_divisor_closed() {
        for ell in [3u64, 5, 7, 11, 13] {
            for d in 1..=24 {
                for n in divisors(gcd(d, ell - 1)) {
                    if embed_cyclic(ell, n, d).unwrap().places.contains(&Place::Finite(ell)) {
                        continue;
                    }
                    for m in divisors(n) {
                        let s = embed_cyclic(ell, m, d).unwrap();
                        assert!(!s.places.contains(&Place::Finite(ell)), "({ell}, {m}, {d})");
                    }
                }
            }
        }
    }

    #[test]
    fn derived_series_detects_solvability() {
        let s4 = group("S4");
        assert!(solvable(&s4, &s4.full_subgroup().members));
        assert!(solvable(&s4, &[0]));
        let s5 = group("S5");
        assert!(!solvable(&s5, &s5.full_subgroup().members));
    }

    #[test]
    fn radical_c3_wr_c4_pairs_over_q() {
        let g = group("wr(C3,C4)");
        let f = ExpFunction::radical(&g);
        let gamma = CycloGamma::rationals(d_of(&g, &f).unwrap());
        let pairs = enumerate_pairs(&g, &f, &gamma).unwrap();
        assert_eq!(pairs.len(), 4);
        for p in &pairs {
            let s = lift_status(&g, &gamma, p);
            match p.subfield.name.as_str() {
                "Q" => {
                    assert_eq!(s.verdict, Verdict::Liftable);
                    assert_eq!(s.rule, LiftRule::None);
                }
                "Q(i)" => {
                    assert_eq!(s.places, vec![Place::Infinity]);
                    assert_eq!(s.rule, LiftRule::AbelianQuotientNecessary);
                }
                "Q(\u{221a}3)" => {
                    assert_eq!(s.places, vec![Place::Finite(3)]);
                    assert_eq!(s.rule, LiftRule::AbelianQuotientNecessary);
                }
                "Q(\u{3bc}3)" => {
                    assert_eq!(s.places, vec![Place::Finite(3), Place::Infinity]);
                    assert_eq!(s.rule, LiftRule::WreathReduction);
                    assert_eq!(s.to_string(), "obstructed: 3, infinity");
                }
                other => panic!("unexpected subfield {other}"),
            }
        }
    }

    #[test]
    fn function_field_base_lifts_solvable_kernels() {
        let g = group("wr(C3,C4)");
        let f = ExpFunction::discriminant(&g);
        let gamma = CycloGamma::function_field(5, d_of(&g, &f).unwrap()).unwrap();
        let pairs = enumerate_pairs(&g, &f, &gamma).unwrap();
        assert_eq!(pairs.len(), 2);
        for p in &pairs {
            let s = lift_status(&g, &gamma, p);
            assert_eq!(s.verdict, Verdict::Liftable);
            let want = if p.is_trivial() { LiftRule::None } else { LiftRule::FunctionField };
            assert_eq!(s.rule, want);
        }
    }

    #[test]
    fn radical_c4_wr_c4_pairs_over_q() {
        let g = group("wr(C4,C4)");
        let f = ExpFunction::radical(&g);
        let gamma = CycloGamma::rationals(d_of(&g, &f).unwrap());
        let pairs = enumerate_pairs(&g, &f, &gamma).unwrap();
        assert_eq!(pairs.len(), 26);
        let mut imaginary_obstructions = 0;
        for p in &pairs {
            let s = lift_status(&g, &gamma, p);
            if s.rule == LiftRule::AbelianQuotientNecessary {
                assert_ne!(s.verdict, Verdict::Liftable);
            }
            if p.subfield.name == "Q(i)" {
                assert_eq!(s.verdict, Verdict::Obstructed);
                assert_eq!(s.places, vec![Place::Infinity]);
                imaginary_obstructions += 1;
            }
            if p.subfield.name == "Q(\u{221a}2)" {
                assert_eq!(s.verdict, Verdict::Unknown);
                assert_eq!(s.reason.as_deref(), Some("wild case out of scope"));
            }
        }
        assert_eq!(imaginary_obstructions, 3);
    }
}
