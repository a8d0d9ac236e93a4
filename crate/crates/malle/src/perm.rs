//! Transitive permutation groups: the expression grammar, explicit element
//! enumeration with a flat open-addressed element index, conjugacy classes,
//! and the sublattice of normal subgroups above the commutator subgroup.
//!
//! Groups here are meant to be fully materialized. Degrees stay small
//! (a point is a `u16`) while orders may reach a few million, so elements
//! live in one flat image buffer and are referred to by dense ids.

use crate::abelian::AbelianGroup;
use crate::arith::lcm;
use crate::{Error, Result};
use std::fmt;
use std::sync::OnceLock;

/// Point of the permutation domain.
pub type Point = u16;
/// Dense index of an element inside a built [`PermGroup`].
pub type ElemId = u32;

const EMPTY: ElemId = ElemId::MAX;

/// A permutation given by its image list: `p` maps `i` to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<Point>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as Point).collect() }
    }

    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if (p as usize) >= n || seen[p as usize] {
                return Err(Error::BadPermutation(format!(
                    "image list {images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[p as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint cycles like `(0 1 2)(3 4)`; `()` is the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut moved = vec![false; degree];
        let s = text.trim();
        let bad = |m: &str| Error::BadPermutation(format!("{text:?}: {m}"));
        let mut rest = s;
        if rest.is_empty() {
            return Err(bad("empty cycle word"));
        }
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| bad("expected '('"))?;
            if !rest[..open].trim().is_empty() {
                return Err(bad("text outside cycles"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            if close < open {
                return Err(bad("')' before '('"));
            }
            let inner = &rest[open + 1..close];
            rest = &rest[close + 1..];
            let mut cycle = Vec::new();
            for tok in inner.split_whitespace() {
                let p: usize =
                    tok.parse().map_err(|_| bad(&format!("bad point {tok:?}")))?;
                if p >= degree {
                    return Err(bad(&format!("point {p} out of range for degree {degree}")));
                }
                if moved[p] {
                    return Err(bad(&format!("point {p} appears twice")));
                }
                moved[p] = true;
                cycle.push(p as Point);
            }
            for (i, &p) in cycle.iter().enumerate() {
                images[p as usize] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p as usize)
    }

    /// `self` after `other`: the result maps `i` to `self[other[i]]`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree());
        Permutation { images: other.images.iter().map(|&p| self.images[p as usize]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0 as Point; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as Point;
        }
        Permutation { images }
    }

    /// Cycles in canonical form: each starts at its least point, listed by
    /// that least point; fixed points included as singletons.
    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start as Point];
            seen[start] = true;
            let mut p = self.images[start] as usize;
            while p != start {
                seen[p] = true;
                c.push(p as Point);
                p = self.images[p] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// The index `ind(g) = degree − #cycles`, fixed points counted as cycles.
    pub fn index(&self) -> u32 {
        (self.degree() - self.cycles().len()) as u32
    }

    /// Cycle type as `len^mult` terms, lengths descending: `3^1,1^9`.
    pub fn cycle_type(&self) -> String {
        let mut counts: std::collections::BTreeMap<usize, usize> = Default::default();
        for c in self.cycles() {
            *counts.entry(c.len()).or_insert(0) += 1;
        }
        let terms: Vec<String> =
            counts.iter().rev().map(|(len, mult)| format!("{len}^{mult}")).collect();
        terms.join(",")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nontrivial: Vec<Vec<Point>> =
            self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return write!(f, "()");
        }
        for c in nontrivial {
            let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Group expression grammar:
///
/// * `C<m>`: cyclic group on `m` points,
/// * `S<m>`: symmetric group on `m` points,
/// * `wr(T,B)`: wreath product in its imprimitive action on
///   `deg(T)·deg(B)` points (point = block·deg(T) + offset),
/// * `x(A,B)`: direct product acting on the product of the two domains,
/// * `gens:n=<degree>;<cycles>;...`: explicit generators in 0-based cycle
///   notation, e.g. `gens:n=4;(0 1 2 3);(1 3)` (top level only).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u32),
    Symmetric(u32),
    Wreath(Box<GroupExpr>, Box<GroupExpr>),
    Product(Box<GroupExpr>, Box<GroupExpr>),
    Explicit { degree: u16, gens: Vec<Permutation> },
}

impl GroupExpr {
    pub fn parse(input: &str) -> Result<GroupExpr> {
        let s = input.trim();
        if let Some(rest) = s.strip_prefix("gens:") {
            return parse_explicit(rest);
        }
        let mut p = Parser { s, pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(Error::Parse(format!("trailing input at {:?}", &s[p.pos..])));
        }
        Ok(e)
    }

    pub fn degree(&self) -> Result<u16> {
        let d = match self {
            GroupExpr::Cyclic(m) | GroupExpr::Symmetric(m) => *m as u64,
            GroupExpr::Wreath(t, b) | GroupExpr::Product(t, b) => {
                t.degree()? as u64 * b.degree()? as u64
            }
            GroupExpr::Explicit { degree, .. } => *degree as u64,
        };
        if d == 0 {
            return Err(Error::Parse("degree must be positive".into()));
        }
        u16::try_from(d).map_err(|_| Error::Parse(format!("degree {d} too large")))
    }

    /// Exact order for built-in constructors, `None` for explicit generators.
    /// Saturates at `u128::MAX`, which exceeds every cap.
    pub fn predicted_order(&self) -> Option<u128> {
        match self {
            GroupExpr::Cyclic(m) => Some(*m as u128),
            GroupExpr::Symmetric(m) => {
                let mut o = 1u128;
                for k in 2..=(*m as u128) {
                    o = o.saturating_mul(k);
                }
                Some(o)
            }
            GroupExpr::Wreath(t, b) => {
                let bt = t.predicted_order()?;
                let bb = b.predicted_order()?;
                let blocks = b.degree().ok()? as u32;
                let mut o = 1u128;
                for _ in 0..blocks {
                    o = o.saturating_mul(bt);
                }
                Some(o.saturating_mul(bb))
            }
            GroupExpr::Product(a, b) => {
                Some(a.predicted_order()?.saturating_mul(b.predicted_order()?))
            }
            GroupExpr::Explicit { .. } => None,
        }
    }

    /// Degree and generating permutations, in a fixed deterministic order.
    pub fn generators(&self) -> Result<(u16, Vec<Permutation>)> {
        let degree = self.degree()?;
        let n = degree as usize;
        let gens = match self {
            GroupExpr::Cyclic(_) => {
                let mut im: Vec<Point> = (1..n as Point).collect();
                im.push(0);
                vec![Permutation::from_images(im)?]
            }
            GroupExpr::Symmetric(_) => {
                if n == 1 {
                    vec![Permutation::identity(1)]
                } else {
                    let mut swap: Vec<Point> = (0..n as Point).collect();
                    swap.swap(0, 1);
                    let mut cyc: Vec<Point> = (1..n as Point).collect();
                    cyc.push(0);
                    let mut gens = vec![Permutation::from_images(swap)?];
                    if n > 2 {
                        gens.push(Permutation::from_images(cyc)?);
                    }
                    gens
                }
            }
            GroupExpr::Wreath(t, b) => {
                let (dt, gt) = t.generators()?;
                let (db, gb) = b.generators()?;
                let (dt, db) = (dt as usize, db as usize);
                let mut gens = Vec::new();
                for g in &gt {
                    let mut im: Vec<Point> = (0..n as Point).collect();
                    for p in 0..dt {
                        im[p] = g.images()[p];
                    }
                    gens.push(Permutation::from_images(im)?);
                }
                for h in &gb {
                    let mut im = vec![0 as Point; n];
                    for block in 0..db {
                        let target = h.images()[block] as usize;
                        for off in 0..dt {
                            im[block * dt + off] = (target * dt + off) as Point;
                        }
                    }
                    gens.push(Permutation::from_images(im)?);
                }
                gens
            }
            GroupExpr::Product(a, b) => {
                let (da, ga) = a.generators()?;
                let (db, gb) = b.generators()?;
                let (da, db) = (da as usize, db as usize);
                let mut gens = Vec::new();
                for g in &ga {
                    let mut im = vec![0 as Point; n];
                    for i in 0..da {
                        for j in 0..db {
                            im[i * db + j] = (g.images()[i] as usize * db + j) as Point;
                        }
                    }
                    gens.push(Permutation::from_images(im)?);
                }
                for h in &gb {
                    let mut im = vec![0 as Point; n];
                    for i in 0..da {
                        for j in 0..db {
                            im[i * db + j] = (i * db + h.images()[j] as usize) as Point;
                        }
                    }
                    gens.push(Permutation::from_images(im)?);
                }
                gens
            }
            GroupExpr::Explicit { gens, .. } => {
                for g in gens {
                    if g.degree() != n {
                        return Err(Error::BadPermutation(format!(
                            "generator degree {} does not match n={n}",
                            g.degree()
                        )));
                    }
                }
                gens.clone()
            }
        };
        Ok((degree, gens))
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(m) => write!(f, "C{m}"),
            GroupExpr::Symmetric(m) => write!(f, "S{m}"),
            GroupExpr::Wreath(t, b) => write!(f, "wr({t},{b})"),
            GroupExpr::Product(a, b) => write!(f, "x({a},{b})"),
            GroupExpr::Explicit { degree, gens } => {
                write!(f, "gens:n={degree}")?;
                for g in gens {
                    write!(f, ";{g}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::str::FromStr for GroupExpr {
    type Err = Error;
    fn from_str(s: &str) -> Result<GroupExpr> {
        GroupExpr::parse(s)
    }
}

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.s[self.pos..].starts_with(|c: char| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: char) -> Result<()> {
        self.skip_ws();
        if self.s[self.pos..].starts_with(tok) {
            self.pos += tok.len_utf8();
            Ok(())
        } else {
            Err(Error::Parse(format!("expected {tok:?} at {:?}", &self.s[self.pos..])))
        }
    }

    fn uint(&mut self) -> Result<u32> {
        let rest = &self.s[self.pos..];
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(Error::Parse(format!("expected a number at {rest:?}")));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| Error::Parse(format!("number {digits} too large")))
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        self.skip_ws();
        let rest = &self.s[self.pos..];
        if rest.starts_with("wr") {
            self.pos += 2;
            let (a, b) = self.pair()?;
            Ok(GroupExpr::Wreath(Box::new(a), Box::new(b)))
        } else if rest.starts_with('x') {
            self.pos += 1;
            let (a, b) = self.pair()?;
            Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
        } else if rest.starts_with('C') {
            self.pos += 1;
            Ok(GroupExpr::Cyclic(self.uint()?))
        } else if rest.starts_with('S') {
            self.pos += 1;
            Ok(GroupExpr::Symmetric(self.uint()?))
        } else {
            Err(Error::Parse(format!("expected a group expression at {rest:?}")))
        }
    }

    fn pair(&mut self) -> Result<(GroupExpr, GroupExpr)> {
        self.eat('(')?;
        let a = self.expr()?;
        self.eat(',')?;
        let b = self.expr()?;
        self.eat(')')?;
        Ok((a, b))
    }
}

fn parse_explicit(rest: &str) -> Result<GroupExpr> {
    let mut parts = rest.split(';');
    let head = parts.next().unwrap_or("").trim();
    let degree: u16 = head
        .strip_prefix("n=")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("expected n=<degree> after gens:, got {head:?}")))?;
    if degree == 0 {
        return Err(Error::Parse("degree must be positive".into()));
    }
    let mut gens = Vec::new();
    for word in parts {
        gens.push(Permutation::from_cycles(degree as usize, word)?);
    }
    Ok(GroupExpr::Explicit { degree, gens })
}

/// Open-addressed index from permutation images to element ids, hashing the
/// raw image bytes, with linear probing.
struct ElemIndex {
    slots: Vec<ElemId>,
    count: usize,
}

fn hash_images(images: &[Point]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &p in images {
        for b in p.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

impl ElemIndex {
    fn with_capacity(expected: usize) -> Self {
        let slots = (expected.max(8) * 2).next_power_of_two();
        ElemIndex { slots: vec![EMPTY; slots], count: 0 }
    }

    fn lookup(&self, flat: &[Point], degree: usize, images: &[Point]) -> Option<ElemId> {
        let mask = self.slots.len() - 1;
        let mut i = (hash_images(images) as usize) & mask;
        loop {
            let id = self.slots[i];
            if id == EMPTY {
                return None;
            }
            let base = id as usize * degree;
            if &flat[base..base + degree] == images {
                return Some(id);
            }
            i = (i + 1) & mask;
        }
    }

    /// Inserts `id`, whose images must already sit at `flat[id*degree..]`
    /// and must not be present.
    fn insert(&mut self, flat: &[Point], degree: usize, id: ElemId) {
        if (self.count + 1) * 10 >= self.slots.len() * 7 {
            self.grow(flat, degree);
        }
        let base = id as usize * degree;
        let mask = self.slots.len() - 1;
        let mut i = (hash_images(&flat[base..base + degree]) as usize) & mask;
        while self.slots[i] != EMPTY {
            i = (i + 1) & mask;
        }
        self.slots[i] = id;
        self.count += 1;
    }

    fn grow(&mut self, flat: &[Point], degree: usize) {
        let new_len = self.slots.len() * 2;
        let mut slots = vec![EMPTY; new_len];
        let mask = new_len - 1;
        for &id in self.slots.iter().filter(|&&id| id != EMPTY) {
            let base = id as usize * degree;
            let mut i = (hash_images(&flat[base..base + degree]) as usize) & mask;
            while slots[i] != EMPTY {
                i = (i + 1) & mask;
            }
            slots[i] = id;
        }
        self.slots = slots;
    }
}

/// A conjugacy class: `rep` is the least member id, `members` sorted.
#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    pub rep: ElemId,
    pub members: Vec<ElemId>,
}

/// All conjugacy classes, sorted by (size, least member id).
#[derive(Clone, Debug)]
pub struct Classes {
    pub list: Vec<ConjugacyClass>,
    /// Class index of each element.
    pub class_of: Vec<u32>,
}

/// A normal subgroup of a built group, with membership flags, sorted member
/// ids, and a generating set.
#[derive(Clone, Debug)]
pub struct NormalSubgroup {
    pub flags: Vec<bool>,
    pub members: Vec<ElemId>,
    pub gens: Vec<ElemId>,
}

impl NormalSubgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, id: ElemId) -> bool {
        self.flags[id as usize]
    }
}

/// A fully enumerated transitive permutation group.
pub struct PermGroup {
    expr: GroupExpr,
    degree: usize,
    flat: Vec<Point>,
    index: ElemIndex,
    gen_ids: Vec<ElemId>,
    inv: Vec<ElemId>,
    classes: OnceLock<Classes>,
    commutator: OnceLock<NormalSubgroup>,
    abelianized: OnceLock<(AbelianGroup, Vec<u32>)>,
}

impl PermGroup {
    /// Enumerates the group of `expr`, refusing to materialize more than
    /// `cap` elements.
    pub fn build(expr: &GroupExpr, cap: u64) -> Result<PermGroup> {
        let (degree, gens) = expr.generators()?;
        let degree = degree as usize;

        let mut reach = vec![false; degree];
        reach[0] = true;
        let mut stack = vec![0usize];
        while let Some(p) = stack.pop() {
            for g in &gens {
                let q = g.images()[p] as usize;
                if !reach[q] {
                    reach[q] = true;
                    stack.push(q);
                }
            }
        }
        if !reach.iter().all(|&r| r) {
            return Err(Error::NotTransitive);
        }

        let predicted = expr.predicted_order();
        if let Some(po) = predicted {
            if po > cap as u128 {
                return Err(Error::CapExceeded { expr: expr.to_string(), order: po, cap });
            }
        }

        let mut flat: Vec<Point> = Vec::new();
        if let Some(po) = predicted {
            flat.reserve_exact(po as usize * degree);
        }
        flat.extend(0..degree as Point);
        let mut index = ElemIndex::with_capacity(predicted.unwrap_or(512) as usize);
        index.insert(&flat, degree, 0);
        let mut count: usize = 1;

        let mut buf = vec![0 as Point; degree];
        let mut head: usize = 0;
        while head < count {
            let base = head * degree;
            for g in &gens {
                for (i, &gi) in g.images().iter().enumerate() {
                    buf[i] = flat[base + gi as usize];
                }
                if index.lookup(&flat, degree, &buf).is_none() {
                    if count as u64 >= cap {
                        return Err(Error::CapExceeded {
                            expr: expr.to_string(),
                            order: predicted.unwrap_or(count as u128 + 1),
                            cap,
                        });
                    }
                    flat.extend_from_slice(&buf);
                    index.insert(&flat, degree, count as ElemId);
                    count += 1;
                }
            }
            head += 1;
        }
        if let Some(po) = predicted {
            assert_eq!(count as u128, po, "enumerated order disagrees with the constructor");
        }

        let mut gen_ids = Vec::new();
        for g in &gens {
            let id = index.lookup(&flat, degree, g.images()).expect("generator enumerated");
            if !gen_ids.contains(&id) {
                gen_ids.push(id);
            }
        }

        let mut inv = vec![EMPTY; count];
        for id in 0..count {
            let base = id * degree;
            for i in 0..degree {
                buf[flat[base + i] as usize] = i as Point;
            }
            inv[id] = index.lookup(&flat, degree, &buf).expect("inverse enumerated");
        }

        Ok(PermGroup {
            expr: expr.clone(),
            degree,
            flat,
            index,
            gen_ids,
            inv,
            classes: OnceLock::new(),
            commutator: OnceLock::new(),
            abelianized: OnceLock::new(),
        })
    }

    pub fn expr(&self) -> &GroupExpr {
        &self.expr
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.inv.len()
    }

    pub fn gen_ids(&self) -> &[ElemId] {
        &self.gen_ids
    }

    /// Image list of an element.
    pub fn elem(&self, id: ElemId) -> &[Point] {
        let base = id as usize * self.degree;
        &self.flat[base..base + self.degree]
    }

    pub fn perm(&self, id: ElemId) -> Permutation {
        Permutation { images: self.elem(id).to_vec() }
    }

    pub fn id_of(&self, images: &[Point]) -> Option<ElemId> {
        if images.len() != self.degree {
            return None;
        }
        self.index.lookup(&self.flat, self.degree, images)
    }

    /// `a` after `b`: the element acting as `b` first, then `a`.
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        let ea = self.elem(a);
        let eb = self.elem(b);
        let buf: Vec<Point> = eb.iter().map(|&p| ea[p as usize]).collect();
        self.id_of(&buf).expect("closed under multiplication")
    }

    pub fn inv(&self, a: ElemId) -> ElemId {
        self.inv[a as usize]
    }

    /// Conjugate `by⁻¹ · x · by`.
    pub fn conj(&self, x: ElemId, by: ElemId) -> ElemId {
        let ex = self.elem(x);
        let eb = self.elem(by);
        let ei = self.elem(self.inv[by as usize]);
        let buf: Vec<Point> = eb.iter().map(|&p| ei[ex[p as usize] as usize]).collect();
        self.id_of(&buf).expect("closed under conjugation")
    }

    /// `a^k` by rotating each cycle `k` steps.
    pub fn pow(&self, a: ElemId, k: u64) -> ElemId {
        let mut buf = vec![0 as Point; self.degree];
        for c in self.perm(a).cycles() {
            let len = c.len();
            let shift = (k % len as u64) as usize;
            for (i, &p) in c.iter().enumerate() {
                buf[p as usize] = c[(i + shift) % len];
            }
        }
        self.id_of(&buf).expect("closed under powers")
    }

    pub fn order_of(&self, a: ElemId) -> u64 {
        self.perm(a).order()
    }

    pub fn index_of(&self, a: ElemId) -> u32 {
        self.perm(a).index()
    }

    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let order = self.order();
            let mut uf = UnionFind::new(order);
            let mut buf = vec![0 as Point; self.degree];
            for &g in &self.gen_ids {
                let g_img = self.elem(g).to_vec();
                let i_img = self.elem(self.inv[g as usize]).to_vec();
                for x in 0..order {
                    let base = x * self.degree;
                    for (i, &gi) in g_img.iter().enumerate() {
                        buf[i] = i_img[self.flat[base + gi as usize] as usize];
                    }
                    let c = self.id_of(&buf).expect("closed under conjugation");
                    uf.union(x as u32, c);
                }
            }
            let mut members_of: std::collections::HashMap<u32, Vec<ElemId>> = Default::default();
            for x in 0..order as u32 {
                members_of.entry(uf.find(x)).or_default().push(x);
            }
            let mut list: Vec<ConjugacyClass> = members_of
                .into_values()
                .map(|members| ConjugacyClass { rep: members[0], members })
                .collect();
            list.sort_by_key(|c| (c.members.len(), c.rep));
            let mut class_of = vec![0u32; order];
            for (ci, c) in list.iter().enumerate() {
                for &m in &c.members {
                    class_of[m as usize] = ci as u32;
                }
            }
            Classes { list, class_of }
        })
    }

    pub fn class_of(&self, a: ElemId) -> u32 {
        self.classes().class_of[a as usize]
    }

    /// The whole group as a normal subgroup of itself.
    pub fn full_subgroup(&self) -> NormalSubgroup {
        NormalSubgroup {
            flags: vec![true; self.order()],
            members: (0..self.order() as ElemId).collect(),
            gens: self.gen_ids.clone(),
        }
    }

    /// Sorted member ids of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[ElemId]) -> Vec<ElemId> {
        let mut flags = vec![false; self.order()];
        flags[0] = true;
        let mut members = vec![0 as ElemId];
        let mut head = 0usize;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !flags[y as usize] {
                    flags[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Sorted member ids of the smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[ElemId]) -> Vec<ElemId> {
        let mut gens: Vec<ElemId> = seed.iter().copied().filter(|&s| s != 0).collect();
        gens.dedup();
        loop {
            let members = self.subgroup_closure(&gens);
            let mut flags = vec![false; self.order()];
            for &m in &members {
                flags[m as usize] = true;
            }
            // One escaping conjugate per round keeps the generator list
            // short: each round at least doubles the subgroup.
            let escape = members.iter().find_map(|&m| {
                self.gen_ids.iter().map(|&g| self.conj(m, g)).find(|&c| !flags[c as usize])
            });
            match escape {
                None => return members,
                Some(c) => gens.push(c),
            }
        }
    }

    /// A small generating set for a subgroup given by its sorted members.
    pub fn generating_set(&self, members: &[ElemId]) -> Vec<ElemId> {
        if members.len() == self.order() {
            return self.gen_ids.clone();
        }
        let mut gens: Vec<ElemId> = Vec::new();
        loop {
            let closure = self.subgroup_closure(&gens);
            if closure.len() == members.len() {
                return gens;
            }
            let mut flags = vec![false; self.order()];
            for &m in &closure {
                flags[m as usize] = true;
            }
            let next = members.iter().copied().find(|&m| !flags[m as usize]);
            gens.push(next.expect("members closed under multiplication"));
        }
    }

    /// Commutator subgroup of the subgroup with the given sorted members.
    pub fn derived_subgroup(&self, members: &[ElemId]) -> Vec<ElemId> {
        let hgens = self.generating_set(members);
        let mut dgens: Vec<ElemId> = Vec::new();
        for &a in &hgens {
            for &b in &hgens {
                let c = self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b);
                if c != 0 && !dgens.contains(&c) {
                    dgens.push(c);
                }
            }
        }
        loop {
            let closure = self.subgroup_closure(&dgens);
            let mut flags = vec![false; self.order()];
            for &m in &closure {
                flags[m as usize] = true;
            }
            let escape = closure.iter().find_map(|&m| {
                hgens.iter().map(|&g| self.conj(m, g)).find(|&c| !flags[c as usize])
            });
            match escape {
                None => return closure,
                Some(c) => dgens.push(c),
            }
        }
    }

    /// The commutator subgroup `[G,G]`.
    pub fn commutator_subgroup(&self) -> &NormalSubgroup {
        self.commutator.get_or_init(|| {
            let mut seed = Vec::new();
            for &a in &self.gen_ids {
                for &b in &self.gen_ids {
                    let c = self.mul(self.mul(self.mul(self.inv(a), self.inv(b)), a), b);
                    if c != 0 && !seed.contains(&c) {
                        seed.push(c);
                    }
                }
            }
            let members = self.normal_closure(&seed);
            let mut flags = vec![false; self.order()];
            for &m in &members {
                flags[m as usize] = true;
            }
            let gens = self.generating_set(&members);
            NormalSubgroup { flags, members, gens }
        })
    }

    /// The abelianization `G/[G,G]` and the projection map. Coset labels in
    /// the abelian group are the least member ids of the cosets.
    pub fn abelianization(&self) -> (&AbelianGroup, &[u32]) {
        let (ab, proj) = self.abelianized.get_or_init(|| {
            let k = self.commutator_subgroup();
            let order = self.order();
            let mut proj = vec![u32::MAX; order];
            let mut reps: Vec<ElemId> = Vec::new();
            for x in 0..order as ElemId {
                if proj[x as usize] != u32::MAX {
                    continue;
                }
                let c = reps.len() as u32;
                reps.push(x);
                for &m in &k.members {
                    proj[self.mul(x, m) as usize] = c;
                }
            }
            let n = reps.len();
            let mut mul = vec![0u32; n * n];
            for i in 0..n {
                for j in 0..n {
                    mul[i * n + j] = proj[self.mul(reps[i], reps[j]) as usize];
                }
            }
            let labels: Vec<u64> = reps.iter().map(|&r| r as u64).collect();
            (AbelianGroup::from_table(labels, mul), proj)
        });
        (ab, proj)
    }

    /// Quotient by a subgroup containing `[G,G]`, as an abelian group plus
    /// the projection map.
    pub fn quotient_abelian(&self, n: &NormalSubgroup) -> Result<(AbelianGroup, Vec<u32>)> {
        let k = self.commutator_subgroup();
        if k.members.iter().any(|&m| !n.contains(m)) {
            return Err(Error::NotNormal);
        }
        let (ab, proj) = self.abelianization();
        let mut image: Vec<u32> = n.members.iter().map(|&m| proj[m as usize]).collect();
        image.sort_unstable();
        image.dedup();
        let (q, qproj) = ab.quotient_by(&image);
        let full: Vec<u32> = proj.iter().map(|&c| qproj[c as usize]).collect();
        Ok((q, full))
    }

    /// Every normal subgroup with abelian quotient (the subgroups between
    /// `[G,G]` and `G`), sorted by (order, members).
    pub fn abelian_normal_lattice(&self) -> Vec<NormalSubgroup> {
        let k = self.commutator_subgroup();
        let (ab, proj) = self.abelianization();
        let mut out = Vec::new();
        for sub in ab.subgroups() {
            let mut inside = vec![false; ab.order()];
            for &u in &sub {
                inside[u as usize] = true;
            }
            let mut flags = vec![false; self.order()];
            let mut members = Vec::new();
            for x in 0..self.order() as ElemId {
                if inside[proj[x as usize] as usize] {
                    flags[x as usize] = true;
                    members.push(x);
                }
            }
            let mut gens = k.gens.clone();
            for &u in &sub {
                let rep = ab.label(u) as ElemId;
                if rep != 0 && !gens.contains(&rep) {
                    gens.push(rep);
                }
            }
            out.push(NormalSubgroup { flags, members, gens });
        }
        out.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
        out
    }
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect(), size: vec![1; n] }
    }

    pub(crate) fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let gp = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
        x
    }

    pub(crate) fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra as usize] >= self.size[rb as usize] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
    }

}
