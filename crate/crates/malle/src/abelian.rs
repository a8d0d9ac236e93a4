//! Finite abelian groups given by multiplication table, cyclotomic unit
//! groups, homomorphism enumeration, and labels for cyclotomic subfields.
//!
//! Groups here are small (quotients of a permutation group by a subgroup
//! containing its commutator, or unit groups mod the modulus of a counting
//! invariant), so a dense table plus a basis from the greedy primary
//! decomposition is the right representation.

use crate::arith::{divisors, factorize, gcd};
use crate::{Error, Result};
use std::collections::HashMap;

/// Finite abelian group with elements `0..order`, identity `0`.
///
/// `labels` attach external meaning to elements: residues for unit groups,
/// minimal member ids for coset groups. Equality of structure is never
/// tested through labels.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u64>,
    labels: Vec<u64>,
    basis: Vec<(u32, u64)>,
    coords: Vec<Vec<u32>>,
}

impl AbelianGroup {
    /// Builds from a row-major multiplication table. Element `0` must be the
    /// identity; the table must describe a finite abelian group.
    pub fn from_table(labels: Vec<u64>, mul: Vec<u32>) -> Self {
        let order = labels.len();
        assert_eq!(mul.len(), order * order, "table shape");
        for i in 0..order {
            debug_assert_eq!(mul[i], i as u32, "identity row");
            debug_assert_eq!(mul[i * order], i as u32, "identity column");
        }
        let mut inv = vec![u32::MAX; order];
        for i in 0..order {
            for j in 0..order {
                if mul[i * order + j] == 0 {
                    inv[i] = j as u32;
                }
            }
        }
        let mut elem_order = vec![0u64; order];
        for i in 0..order {
            let mut k = 1u64;
            let mut acc = i as u32;
            while acc != 0 {
                acc = mul[acc as usize * order + i];
                k += 1;
            }
            elem_order[i] = k;
        }
        let mut g = AbelianGroup { order, mul, inv, elem_order, labels, basis: Vec::new(), coords: Vec::new() };
        g.basis = g.greedy_basis();
        g.coords = g.coordinates();
        g
    }

    /// Cyclic group of order `n` with labels `0..n`.
    pub fn cyclic(n: u64) -> Self {
        let n = n as usize;
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = ((i + j) % n) as u32;
            }
        }
        Self::from_table((0..n as u64).collect(), mul)
    }

    /// Direct product of cyclic groups; labels are mixed-radix indices.
    pub fn product_of_cyclic(ns: &[u64]) -> Self {
        let order: u64 = ns.iter().product();
        let order = order as usize;
        let decode = |mut x: usize| -> Vec<usize> {
            let mut t = Vec::with_capacity(ns.len());
            for &n in ns.iter().rev() {
                t.push(x % n as usize);
                x /= n as usize;
            }
            t.reverse();
            t
        };
        let encode = |t: &[usize]| -> usize {
            let mut x = 0usize;
            for (i, &n) in ns.iter().enumerate() {
                x = x * n as usize + t[i] % n as usize;
            }
            x
        };
        let mut mul = vec![0u32; order * order];
        for i in 0..order {
            let a = decode(i);
            for j in 0..order {
                let b = decode(j);
                let s: Vec<usize> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
                mul[i * order + j] = encode(&s) as u32;
            }
        }
        Self::from_table((0..order as u64).collect(), mul)
    }

    /// The unit group `(Z/dZ)^×` with residues as labels.
    pub fn units_mod(d: u64) -> Self {
        assert!(d >= 1);
        if d == 1 {
            return Self::from_table(vec![0], vec![0]);
        }
        let residues: Vec<u64> = (1..=d).filter(|&r| gcd(r, d) == 1).collect();
        let pos: HashMap<u64, u32> =
            residues.iter().enumerate().map(|(i, &r)| (r, i as u32)).collect();
        let n = residues.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = pos[&(residues[i] * residues[j] % d)];
            }
        }
        Self::from_table(residues, mul)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.mul[i as usize * self.order + j as usize]
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inv[i as usize]
    }

    pub fn pow(&self, i: u32, k: u64) -> u32 {
        let k = k % self.elem_order[i as usize];
        let mut acc = 0u32;
        for _ in 0..k {
            acc = self.mul(acc, i);
        }
        acc
    }

    pub fn elem_order(&self, i: u32) -> u64 {
        self.elem_order[i as usize]
    }

    pub fn label(&self, i: u32) -> u64 {
        self.labels[i as usize]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of_label(&self, label: u64) -> Option<u32> {
        self.labels.iter().position(|&l| l == label).map(|i| i as u32)
    }

    /// Independent generators with prime-power orders, one primary component
    /// after another (primes ascending, orders descending within a prime).
    pub fn basis(&self) -> &[(u32, u64)] {
        &self.basis
    }

    /// Exponents of an element over [`basis`](Self::basis).
    pub fn coords(&self, i: u32) -> &[u32] {
        &self.coords[i as usize]
    }

    /// Basis orders sorted descending: the primary invariants of the group.
    pub fn primary_type(&self) -> Vec<u64> {
        let mut t: Vec<u64> = self.basis.iter().map(|&(_, o)| o).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn is_cyclic(&self) -> bool {
        let mut by_prime: HashMap<u64, u32> = HashMap::new();
        for &(_, o) in &self.basis {
            *by_prime.entry(factorize(o)[0].0).or_insert(0) += 1;
        }
        by_prime.values().all(|&c| c <= 1)
    }

    pub fn exponent(&self) -> u64 {
        self.elem_order.iter().copied().max().unwrap_or(1)
    }

    /// Members of the subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[u32]) -> Vec<u32> {
        let mut flags = vec![false; self.order];
        flags[0] = true;
        let mut members = vec![0u32];
        let mut queue = vec![0u32];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !flags[y as usize] {
                    flags[y as usize] = true;
                    members.push(y);
                    queue.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Every subgroup, as sorted member lists, ordered by (size, members).
    pub fn subgroups(&self) -> Vec<Vec<u32>> {
        let mut seen: std::collections::BTreeSet<Vec<u32>> = std::collections::BTreeSet::new();
        seen.insert(vec![0]);
        let mut queue: Vec<Vec<u32>> = vec![vec![0]];
        while let Some(s) = queue.pop() {
            for x in 1..self.order as u32 {
                if s.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = s.clone();
                gens.push(x);
                let t = self.span(&gens);
                if seen.insert(t.clone()) {
                    queue.push(t);
                }
            }
        }
        let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }

    /// Quotient by the subgroup with the given sorted members. Returns the
    /// quotient (labels are minimal member indices of cosets) and the
    /// projection map.
    pub fn quotient_by(&self, members: &[u32]) -> (AbelianGroup, Vec<u32>) {
        let mut proj = vec![u32::MAX; self.order];
        let mut reps: Vec<u32> = Vec::new();
        for x in 0..self.order as u32 {
            if proj[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &m in members {
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
        let labels = reps.iter().map(|&r| r as u64).collect();
        (AbelianGroup::from_table(labels, mul), proj)
    }

    /// The subgroup with the given sorted members as a group of its own,
    /// labels inherited from the parent.
    pub fn subgroup_group(&self, members: &[u32]) -> AbelianGroup {
        let pos: HashMap<u32, u32> =
            members.iter().enumerate().map(|(i, &m)| (m, i as u32)).collect();
        let n = members.len();
        let mut mul = vec![0u32; n * n];
        for i in 0..n {
            for j in 0..n {
                mul[i * n + j] = pos[&self.mul(members[i], members[j])];
            }
        }
        let labels = members.iter().map(|&m| self.label(m)).collect();
        AbelianGroup::from_table(labels, mul)
    }

    fn greedy_basis(&self) -> Vec<(u32, u64)> {
        let mut basis = Vec::new();
        for (p, e) in factorize(self.order as u64) {
            let part_size = p.pow(e);
            let mut flags = vec![false; self.order];
            flags[0] = true;
            let mut span_members = vec![0u32];
            let mut span_size = 1u64;
            while span_size < part_size {
                // A generator of a direct summand of what is left: maximal
                // order among p-elements whose span meets the current
                // subgroup only at powers already inside it.
                let mut best: Option<(u64, u32)> = None;
                for x in 1..self.order as u32 {
                    let o = self.elem_order[x as usize];
                    if o == 1 || o % p != 0 || factorize(o).len() != 1 {
                        continue;
                    }
                    if flags[self.pow(x, o / p) as usize] {
                        continue;
                    }
                    if best.map_or(true, |(bo, bx)| (o, std::cmp::Reverse(x)) > (bo, std::cmp::Reverse(bx))) {
                        best = Some((o, x));
                    }
                }
                let (o, x) = best.expect("abelian p-group has a summand generator");
                basis.push((x, o));
                let mut next = Vec::new();
                for &s in &span_members {
                    let mut acc = s;
                    for _ in 0..o {
                        if !flags[acc as usize] {
                            flags[acc as usize] = true;
                            next.push(acc);
                        }
                        acc = self.mul(acc, x);
                    }
                }
                span_members.extend(next);
                span_size *= o;
            }
        }
        basis
    }

    fn coordinates(&self) -> Vec<Vec<u32>> {
        let k = self.basis.len();
        let mut coords = vec![Vec::new(); self.order];
        let mut seen = vec![false; self.order];
        let mut tuple = vec![0u32; k];
        loop {
            let mut e = 0u32;
            for (i, &(g, _)) in self.basis.iter().enumerate() {
                e = self.mul(e, self.pow(g, tuple[i] as u64));
            }
            assert!(!seen[e as usize], "basis not independent");
            seen[e as usize] = true;
            coords[e as usize] = tuple.clone();
            // next mixed-radix tuple
            let mut i = k;
            loop {
                if i == 0 {
                    return coords;
                }
                i -= 1;
                tuple[i] += 1;
                if (tuple[i] as u64) < self.basis[i].1 {
                    break;
                }
                tuple[i] = 0;
            }
        }
    }
}

/// Total homomorphism between abelian groups, with its kernel.
#[derive(Clone, Debug)]
pub struct Hom {
    /// Image of each source element.
    pub map: Vec<u32>,
    /// Sorted source indices mapping to the identity.
    pub kernel: Vec<u32>,
}

/// All surjective homomorphisms `src -> dst`, in a deterministic order
/// (lexicographic over the images of the source basis).
pub fn surjections(src: &AbelianGroup, dst: &AbelianGroup) -> Vec<Hom> {
    let k = src.basis().len();
    let mut out = Vec::new();
    let mut images = vec![0u32; k];
    'outer: loop {
        let ok = src
            .basis()
            .iter()
            .zip(&images)
            .all(|(&(_, o), &im)| o % dst.elem_order(im) == 0);
        if ok {
            let mut map = vec![0u32; src.order()];
            for e in 0..src.order() as u32 {
                let mut acc = 0u32;
                for (i, &im) in images.iter().enumerate() {
                    acc = dst.mul(acc, dst.pow(im, src.coords(e)[i] as u64));
                }
                map[e as usize] = acc;
            }
            let mut hit = vec![false; dst.order()];
            for &v in &map {
                hit[v as usize] = true;
            }
            if hit.iter().all(|&h| h) {
                let kernel: Vec<u32> =
                    (0..src.order() as u32).filter(|&e| map[e as usize] == 0).collect();
                out.push(Hom { map, kernel });
            }
        }
        let mut i = k;
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            images[i] += 1;
            if (images[i] as usize) < dst.order() {
                break;
            }
            images[i] = 0;
        }
    }
    if k == 0 && dst.order() == 1 {
        // trivial source, trivial target: the empty product above already
        // produced the unique hom exactly once
    }
    out
}

/// Base field of the counting problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseField {
    Q,
    /// Rational function field over the field with `q` elements.
    FunctionField { q: u64 },
}

impl std::fmt::Display for BaseField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BaseField::Q => write!(f, "Q"),
            BaseField::FunctionField { q } => write!(f, "Fq:q={q}"),
        }
    }
}

/// Image of the absolute Galois group of the base field in `(Z/dZ)^×`
/// through its action on roots of unity: everything over `Q`, the closure
/// of `q` over `F_q(t)`.
#[derive(Clone, Debug)]
pub struct CycloGamma {
    pub modulus: u64,
    pub base: BaseField,
    /// The group itself; labels are residues mod `modulus`.
    pub group: AbelianGroup,
}

impl CycloGamma {
    pub fn rationals(modulus: u64) -> Self {
        CycloGamma { modulus, base: BaseField::Q, group: AbelianGroup::units_mod(modulus) }
    }

    pub fn function_field(q: u64, modulus: u64) -> Result<Self> {
        if modulus == 0 || gcd(q, modulus) != 1 {
            return Err(Error::Precondition(format!(
                "constant field size {q} not coprime to the modulus {modulus}"
            )));
        }
        let units = AbelianGroup::units_mod(modulus);
        let qi = units
            .index_of_label(q % modulus.max(1))
            .or_else(|| units.index_of_label(if modulus == 1 { 0 } else { q % modulus }))
            .expect("coprime residue is a unit");
        let mut members = vec![qi];
        let mut acc = qi;
        while acc != 0 {
            acc = units.mul(acc, qi);
            members.push(acc);
        }
        members.sort_unstable();
        members.dedup();
        let group = units.subgroup_group(&members);
        Ok(CycloGamma { modulus, base: BaseField::FunctionField { q }, group })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Index of the residue `-1`, when it lies in the group.
    pub fn neg_one(&self) -> Option<u32> {
        if self.modulus <= 2 {
            return Some(0);
        }
        self.group.index_of_label(self.modulus - 1)
    }
}

/// A subfield of the `modulus`-th cyclotomic field of the base, named by the
/// kernel of the character cutting it out.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SubfieldLabel {
    /// Modulus the kernel residues live in.
    pub d: u64,
    /// Sorted residues of the kernel subgroup.
    pub kernel_residues: Vec<u64>,
    /// Display name; equality of fields is by `(d, kernel_residues)`.
    pub name: String,
    #[serde(skip)]
    pub degree: u64,
    #[serde(skip)]
    pub conductor: u64,
}

/// Names the fixed field of the subgroup of `gamma` with the given element
/// indices. The kernel is first reduced to its conductor, so e.g. the
/// degree-4 kernel `{1,5,9,13}` mod 16 comes out as `Q(i)`.
pub fn label_subfield(gamma: &CycloGamma, kernel: &[u32]) -> SubfieldLabel {
    let d = gamma.modulus;
    let mut residues: Vec<u64> = kernel.iter().map(|&i| gamma.group.label(i)).collect();
    residues.sort_unstable();
    let degree = (gamma.order() / kernel.len().max(1)) as u64;

    // conductor: the least f | d whose congruence kernel lies inside ours
    let mut conductor = d;
    let mut reduced: Vec<u64> = residues.clone();
    for f in divisors(d) {
        let k_f: Vec<u64> =
            gamma.group.labels().iter().copied().filter(|&y| y % f == 1 % f).collect();
        if k_f.iter().all(|y| residues.binary_search(y).is_ok()) {
            conductor = f;
            let mut image: Vec<u64> = residues.iter().map(|&y| y % f).collect();
            image.sort_unstable();
            image.dedup();
            reduced = image;
            break;
        }
    }

    let name = match &gamma.base {
        BaseField::Q => name_over_q(conductor, &reduced),
        BaseField::FunctionField { q } => {
            if degree == 1 {
                format!("F_{q}(t)")
            } else {
                format!("F_{{{q}^{degree}}}(t)")
            }
        }
    };
    SubfieldLabel { d, kernel_residues: residues, name, degree, conductor }
}

fn name_over_q(f: u64, kernel: &[u64]) -> String {
    if f == 1 {
        return "Q".to_string();
    }
    let named: &[(u64, &[u64], &str)] = &[
        (3, &[1], "Q(μ3)"),
        (4, &[1], "Q(i)"),
        (5, &[1], "Q(μ5)"),
        (5, &[1, 4], "Q(√5)"),
        (8, &[1], "Q(μ8)"),
        (8, &[1, 3], "Q(√-2)"),
        (8, &[1, 7], "Q(√2)"),
        (12, &[1], "Q(μ12)"),
        (12, &[1, 11], "Q(√3)"),
        (16, &[1], "Q(μ16)"),
        (16, &[1, 15], "Q(μ16)+"),
    ];
    for &(nf, nk, name) in named {
        if nf == f && nk == kernel {
            return name.to_string();
        }
    }
    let ks: Vec<String> = kernel.iter().map(|r| r.to_string()).collect();
    format!("Q(μ{f})^{{{}}}", ks.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_structure() {
        let c12 = AbelianGroup::cyclic(12);
        assert_eq!(c12.order(), 12);
        assert_eq!(c12.exponent(), 12);
        assert!(c12.is_cyclic());
        // primary basis: one generator of order 4, one of order 3
        assert_eq!(c12.primary_type(), vec![4, 3]);
    }

    #[test]
    fn unit_group_shapes() {
        assert_eq!(AbelianGroup::units_mod(12).primary_type(), vec![2, 2]);
        assert_eq!(AbelianGroup::units_mod(16).primary_type(), vec![4, 2]);
        let u7 = AbelianGroup::units_mod(7);
        assert_eq!(u7.order(), 6);
        assert!(u7.is_cyclic());
        assert_eq!(AbelianGroup::units_mod(1).order(), 1);
        assert_eq!(AbelianGroup::units_mod(2).order(), 1);
    }

    #[test]
    fn basis_is_independent_and_full() {
        for d in 2u64..=40 {
            let u = AbelianGroup::units_mod(d);
            let prod: u64 = u.basis().iter().map(|&(_, o)| o).product();
            assert_eq!(prod, u.order() as u64, "basis orders at d={d}");
            // coordinates() already asserts injectivity of the basis map
            let _ = u.coords(0);
        }
    }

    #[test]
    fn spans_and_subgroups() {
        let a = AbelianGroup::product_of_cyclic(&[2, 4]);
        assert_eq!(a.subgroups().len(), 8); // C2xC4 has 8 subgroups
        let c12 = AbelianGroup::cyclic(12);
        assert_eq!(c12.subgroups().len(), 6); // one per divisor
    }

    #[test]
    fn quotients() {
        let c12 = AbelianGroup::cyclic(12);
        let sub = c12.span(&[c12.index_of_label(4).unwrap()]); // order 3
        let (q, proj) = c12.quotient_by(&sub);
        assert_eq!(q.order(), 4);
        assert!(q.is_cyclic());
        for i in 0..12u32 {
            for j in 0..12u32 {
                let lhs = proj[c12.mul(i, j) as usize];
                let rhs = q.mul(proj[i as usize], proj[j as usize]);
                assert_eq!(lhs, rhs, "projection is a homomorphism");
            }
        }
    }

    #[test]
    fn surjection_counts() {
        let u12 = AbelianGroup::units_mod(12);
        let c2 = AbelianGroup::cyclic(2);
        assert_eq!(surjections(&u12, &c2).len(), 3);

        let c2src = AbelianGroup::cyclic(2);
        let c4 = AbelianGroup::cyclic(4);
        assert_eq!(surjections(&c2src, &c4).len(), 0);

        let u16 = AbelianGroup::units_mod(16);
        let c2x4 = AbelianGroup::product_of_cyclic(&[2, 4]);
        assert_eq!(surjections(&u16, &c2x4).len(), 8);

        // cyclic-to-cyclic: phi(n) surjections when n | m, none otherwise
        for (m, n, want) in [(12u64, 4u64, 2usize), (12, 3, 2), (12, 5, 0), (6, 6, 2)] {
            let src = AbelianGroup::cyclic(m);
            let dst = AbelianGroup::cyclic(n);
            assert_eq!(surjections(&src, &dst).len(), want, "C{m} -> C{n}");
        }
    }

    #[test]
    fn surjections_verify_hom_property() {
        let u16 = AbelianGroup::units_mod(16);
        let c2x4 = AbelianGroup::product_of_cyclic(&[2, 4]);
        for hom in surjections(&u16, &c2x4) {
            for i in 0..u16.order() as u32 {
                for j in 0..u16.order() as u32 {
                    let lhs = hom.map[u16.mul(i, j) as usize];
                    let rhs = c2x4.mul(hom.map[i as usize], hom.map[j as usize]);
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn gamma_over_function_field() {
        // q = 5 generates the full unit group mod 3
        let g = CycloGamma::function_field(5, 3).unwrap();
        assert_eq!(g.order(), 2);
        // q = 7 is 1 mod 3: trivial image
        let g = CycloGamma::function_field(7, 3).unwrap();
        assert_eq!(g.order(), 1);
        assert!(CycloGamma::function_field(6, 3).is_err());
    }

    /// Kronecker symbol, used as an independent check that quadratic kernels
    /// get the right field name.
    fn kronecker(mut a: i64, mut n: i64) -> i64 {
        if n == 0 {
            return if a.abs() == 1 { 1 } else { 0 };
        }
        let mut result = 1i64;
        if n < 0 {
            n = -n;
            if a < 0 {
                result = -result;
            }
        }
        while n % 2 == 0 {
            n /= 2;
            if a % 2 == 0 {
                return 0;
            }
            if a.rem_euclid(8) == 3 || a.rem_euclid(8) == 5 {
                result = -result;
            }
        }
        a = a.rem_euclid(n);
        while a != 0 {
            while a % 2 == 0 {
                a /= 2;
                if n.rem_euclid(8) == 3 || n.rem_euclid(8) == 5 {
                    result = -result;
                }
            }
            std::mem::swap(&mut a, &mut n);
            if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
                result = -result;
            }
            a = a.rem_euclid(n);
        }
        if n == 1 {
            result
        } else {
            0
        }
    }

    /// The quadratic field Q(sqrt(D)) of fundamental discriminant D sits in
    /// Q(mu_|D|) as the kernel of the Kronecker character. Cross-check every
    /// named quadratic label against it.
    #[test]
    fn quadratic_labels_match_kronecker_characters() {
        let cases: &[(u64, &[u64], i64)] = &[
            (4, &[1], -4),        // Q(i)
            (3, &[1], -3),        // Q(μ3) = Q(√-3)
            (12, &[1, 11], 12),   // Q(√3)
            (8, &[1, 7], 8),      // Q(√2)
            (8, &[1, 3], -8),     // Q(√-2)
            (5, &[1, 4], 5),      // Q(√5)
        ];
        for &(d, kernel, disc) in cases {
            let gamma = CycloGamma::rationals(d);
            for y in gamma.group.labels() {
                let in_kernel = kernel.contains(y);
                let chi = kronecker(disc, *y as i64);
                assert_eq!(chi == 1, in_kernel, "d={d} y={y} disc={disc}");
            }
        }
    }

    #[test]
    fn subfield_names() {
        let g12 = CycloGamma::rationals(12);
        let idx = |r: u64| g12.group.index_of_label(r).unwrap();

        let full: Vec<u32> = (0..g12.order() as u32).collect();
        assert_eq!(label_subfield(&g12, &full).name, "Q");

        // {1,5} fixes i (5 ≡ 1 mod 4), {1,7} fixes μ3, {1,11} is complex
        // conjugation so fixes the real quadratic
        assert_eq!(label_subfield(&g12, &[idx(1), idx(5)]).name, "Q(i)");
        assert_eq!(label_subfield(&g12, &[idx(1), idx(7)]).name, "Q(μ3)");
        assert_eq!(label_subfield(&g12, &[idx(1), idx(11)]).name, "Q(√3)");
        assert_eq!(label_subfield(&g12, &[idx(1)]).name, "Q(μ12)");

        let g3 = CycloGamma::rationals(3);
        assert_eq!(label_subfield(&g3, &[0]).name, "Q(μ3)");

        // conductor reduction: index-4 kernel {1,5,9,13} mod 16 fixes Q(i)
        let g16 = CycloGamma::rationals(16);
        let i16 = |r: u64| g16.group.index_of_label(r).unwrap();
        let k = [i16(1), i16(5), i16(9), i16(13)];
        let label = label_subfield(&g16, &k);
        assert_eq!(label.conductor, 4);
        assert_eq!(label.name, "Q(i)");
        let k = [i16(1), i16(9)];
        assert_eq!(label_subfield(&g16, &k).name, "Q(μ8)");
        let k = [i16(1), i16(15)];
        assert_eq!(label_subfield(&g16, &k).name, "Q(μ16)+");
        let k = [i16(1), i16(7)];
        assert_eq!(label_subfield(&g16, &k).name, "Q(μ16)^{1,7}");

        // degree-4 kernel mod 20 with conductor 5
        let g20 = CycloGamma::rationals(20);
        let i20 = |r: u64| g20.group.index_of_label(r).unwrap();
        let label = label_subfield(&g20, &[i20(1), i20(11)]);
        assert_eq!(label.conductor, 5);
        assert_eq!(label.name, "Q(μ5)");

        let gf = CycloGamma::function_field(5, 3).unwrap();
        assert_eq!(label_subfield(&gf, &[0]).name, "F_{5^2}(t)");
        let full: Vec<u32> = (0..gf.order() as u32).collect();
        assert_eq!(label_subfield(&gf, &full).name, "F_5(t)");
    }
}
