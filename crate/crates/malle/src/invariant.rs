//! Counting invariants: class functions `exp` that weight each conjugacy
//! class of a transitive group, as in `|disc|^(1/exp)` style counts.
//!
//! Built in are the discriminant exponent (the permutation index
//! `ind(g) = degree − #cycles`) and the radical conductor exponent
//! (`1` on every nonidentity class). User tables keyed by cycle type are
//! accepted after validation: they must cover every class and be stable
//! under powering by exponents coprime to the element order.

use crate::arith::{gcd, lcm};
use crate::perm::{ElemId, NormalSubgroup, PermGroup};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpKind {
    Discriminant,
    Radical,
    Table { name: String },
}

/// A validated counting invariant on a specific built group.
#[derive(Clone, Debug)]
pub struct ExpFunction {
    pub kind: ExpKind,
    values: Vec<u64>,
}

impl ExpFunction {
    pub fn discriminant(g: &PermGroup) -> ExpFunction {
        let values = g.classes().list.iter().map(|c| g.index_of(c.rep) as u64).collect();
        ExpFunction { kind: ExpKind::Discriminant, values }
    }

    pub fn radical(g: &PermGroup) -> ExpFunction {
        let values = g.classes().list.iter().map(|c| u64::from(c.rep != 0)).collect();
        ExpFunction { kind: ExpKind::Radical, values }
    }

    /// Parses a table of `cycle_type: value` lines (`#` starts a comment):
    ///
    /// ```text
    /// 1^12: 0
    /// 3^1,1^9: 2
    /// ```
    pub fn from_table(g: &PermGroup, name: &str, text: &str) -> Result<ExpFunction> {
        let mut table: std::collections::BTreeMap<String, u64> = Default::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |m: String| Error::BadTable(format!("line {}: {m}", i + 1));
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| at("expected 'cycle_type: value'".into()))?;
            let key = canonical_cycle_type(key, g.degree())
                .map_err(|m| at(m))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| at(format!("bad value {:?}", value.trim())))?;
            if table.insert(key.clone(), value).is_some() {
                return Err(at(format!("duplicate entry for {key}")));
            }
        }

        let classes = g.classes();
        let mut values = Vec::with_capacity(classes.list.len());
        for c in &classes.list {
            let ct = g.perm(c.rep).cycle_type();
            match table.get(&ct) {
                Some(&v) => values.push(v),
                None => {
                    return Err(Error::BadTable(format!(
                        "no entry for the class with cycle type {ct}"
                    )))
                }
            }
        }

        for (ci, c) in classes.list.iter().enumerate() {
            let ord = g.order_of(c.rep);
            for k in 2..ord {
                if gcd(k, ord) != 1 {
                    continue;
                }
                let cj = g.class_of(g.pow(c.rep, k)) as usize;
                if values[cj] != values[ci] {
                    return Err(Error::BadTable(format!(
                        "value {} on the class with cycle type {} changes to {} under the \
                         coprime power k={k}",
                        values[ci],
                        g.perm(c.rep).cycle_type(),
                        values[cj],
                    )));
                }
            }
        }

        Ok(ExpFunction { kind: ExpKind::Table { name: name.to_string() }, values })
    }

    pub fn value(&self, class: u32) -> u64 {
        self.values[class as usize]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Short name used in reports: `disc`, `rad`, or `table:<name>`.
    pub fn name(&self) -> String {
        match &self.kind {
            ExpKind::Discriminant => "disc".into(),
            ExpKind::Radical => "rad".into(),
            ExpKind::Table { name } => format!("table:{name}"),
        }
    }
}

fn canonical_cycle_type(key: &str, degree: usize) -> std::result::Result<String, String> {
    let mut parts: Vec<(u64, u64)> = Vec::new();
    for term in key.trim().split(',') {
        let (len, mult) = match term.trim().split_once('^') {
            Some((l, m)) => (l.trim(), m.trim()),
            None => (term.trim(), "1"),
        };
        let len: u64 = len.parse().map_err(|_| format!("bad cycle length {len:?}"))?;
        let mult: u64 = mult.parse().map_err(|_| format!("bad multiplicity {mult:?}"))?;
        if len == 0 || mult == 0 {
            return Err(format!("zero in cycle type term {term:?}"));
        }
        parts.push((len, mult));
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    let total: u64 = parts.iter().map(|&(l, m)| l * m).sum();
    if total != degree as u64 {
        return Err(format!("cycle type {key:?} covers {total} points, the degree is {degree}"));
    }
    for w in parts.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(format!("cycle length {} repeated in {key:?}", w[0].0));
        }
    }
    Ok(parts
        .iter()
        .map(|&(l, m)| format!("{l}^{m}"))
        .collect::<Vec<_>>()
        .join(","))
}

/// The elements realizing the minimal invariant value.
#[derive(Clone, Debug)]
pub struct MinSet {
    /// The minimum of `exp` over the nonidentity elements in scope.
    pub value: u64,
    /// Sorted element ids attaining it.
    pub members: Vec<ElemId>,
}

/// `a(G)`: the minimal invariant value over nonidentity classes.
pub fn a_of(g: &PermGroup, f: &ExpFunction) -> Result<u64> {
    let identity_class = g.class_of(0);
    g.classes()
        .list
        .iter()
        .enumerate()
        .filter(|&(ci, _)| ci as u32 != identity_class)
        .map(|(ci, _)| f.value(ci as u32))
        .min()
        .ok_or(Error::EmptyMinimum)
}

/// Minimal invariant value over the nonidentity members of a subgroup.
pub fn a_of_subgroup(g: &PermGroup, f: &ExpFunction, n: &NormalSubgroup) -> Result<u64> {
    n.members
        .iter()
        .filter(|&&m| m != 0)
        .map(|&m| f.value(g.class_of(m)))
        .min()
        .ok_or(Error::EmptyMinimum)
}

pub fn s_min(g: &PermGroup, f: &ExpFunction) -> Result<MinSet> {
    let value = a_of(g, f)?;
    let identity_class = g.class_of(0);
    let mut members = Vec::new();
    for (ci, c) in g.classes().list.iter().enumerate() {
        if ci as u32 != identity_class && f.value(ci as u32) == value {
            members.extend_from_slice(&c.members);
        }
    }
    members.sort_unstable();
    Ok(MinSet { value, members })
}

pub fn s_min_subgroup(g: &PermGroup, f: &ExpFunction, n: &NormalSubgroup) -> Result<MinSet> {
    let value = a_of_subgroup(g, f, n)?;
    let members = n
        .members
        .iter()
        .copied()
        .filter(|&m| m != 0 && f.value(g.class_of(m)) == value)
        .collect();
    Ok(MinSet { value, members })
}

/// The powering modulus: lcm of the orders of all minimal elements. The
/// cyclotomic action on minimal classes factors through `(Z/dZ)^×`.
pub fn d_of(g: &PermGroup, f: &ExpFunction) -> Result<u64> {
    let set = s_min(g, f)?;
    Ok(set.members.iter().fold(1, |acc, &m| lcm(acc, g.order_of(m))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::GroupExpr;
    use crate::DEFAULT_ELEMENT_CAP as CAP;

    fn build(s: &str) -> PermGroup {
        PermGroup::build(&GroupExpr::parse(s).unwrap(), CAP).unwrap()
    }

    #[test]
    fn discriminant_basics() {
        let g = build("S3");
        let f = ExpFunction::discriminant(&g);
        assert_eq!(a_of(&g, &f).unwrap(), 1);
        let set = s_min(&g, &f).unwrap();
        assert_eq!(set.members.len(), 3);
        assert_eq!(d_of(&g, &f).unwrap(), 2);
    }

    #[test]
    fn wreath_disc_and_rad() {
        let g = build("wr(C3,C4)");
        let disc = ExpFunction::discriminant(&g);
        assert_eq!(a_of(&g, &disc).unwrap(), 2);
        let set = s_min(&g, &disc).unwrap();
        assert_eq!(set.members.len(), 8); // one-block 3-cycles
        assert_eq!(d_of(&g, &disc).unwrap(), 3);

        let rad = ExpFunction::radical(&g);
        assert_eq!(a_of(&g, &rad).unwrap(), 1);
        assert_eq!(s_min(&g, &rad).unwrap().members.len(), 323);
        assert_eq!(d_of(&g, &rad).unwrap(), 12); // the exponent of the group
    }

    #[test]
    fn subgroup_minima() {
        let g = build("wr(C3,C4)");
        let disc = ExpFunction::discriminant(&g);
        let lat = g.abelian_normal_lattice();
        let base = lat.iter().find(|n| n.order() == 81).unwrap();
        assert_eq!(a_of_subgroup(&g, &disc, base).unwrap(), 2);
        assert_eq!(s_min_subgroup(&g, &disc, base).unwrap().members.len(), 8);
        // the order-54 member pairs double block swaps with sum-zero vectors:
        // no one-block 3-cycles, so its minimum sits strictly higher
        let mid = lat.iter().find(|n| n.order() == 54).unwrap();
        assert_eq!(a_of_subgroup(&g, &disc, mid).unwrap(), 4);
    }

    #[test]
    fn table_matches_discriminant() {
        let g = build("C4");
        let f = ExpFunction::from_table(&g, "t", "1^4: 0\n4^1: 3\n2^2: 2\n").unwrap();
        let d = ExpFunction::discriminant(&g);
        assert_eq!(f.values(), d.values());
        assert_eq!(f.name(), "table:t");
    }

    #[test]
    fn table_accepts_comments_and_units() {
        let g = build("C4");
        let f = ExpFunction::from_table(
            &g,
            "t",
            "# conductor-style weights\n1^4: 0\n4: 1  # bare length means ^1\n2^2: 1\n",
        )
        .unwrap();
        assert_eq!(f.values(), ExpFunction::radical(&g).values());
    }

    #[test]
    fn table_rejections() {
        let g = build("C4");
        let missing = ExpFunction::from_table(&g, "t", "1^4: 0\n2^2: 2\n");
        assert!(matches!(missing, Err(Error::BadTable(m)) if m.contains("4^1")));
        let badsum = ExpFunction::from_table(&g, "t", "3^1: 2\n");
        assert!(matches!(badsum, Err(Error::BadTable(m)) if m.contains("covers 3 points")));
        let dup = ExpFunction::from_table(&g, "t", "1^4: 0\n1^4: 1\n");
        assert!(matches!(dup, Err(Error::BadTable(m)) if m.contains("duplicate")));
        let junk = ExpFunction::from_table(&g, "t", "what\n");
        assert!(junk.is_err());
    }

    #[test]
    fn empty_minimum_for_trivial_scopes() {
        let g = build("C1");
        let f = ExpFunction::discriminant(&g);
        assert!(matches!(a_of(&g, &f), Err(Error::EmptyMinimum)));
    }
}
