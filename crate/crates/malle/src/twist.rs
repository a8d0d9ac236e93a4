//! Twisted orbit counting over pairs (pi, phi).
//!
//! A pair consists of a projection `pi` from the group onto an abelian
//! quotient `B` together with a surjection `phi` from the cyclotomic
//! character group onto the same `B`. The fibered group
//! `{(x, y) : pi(x) = phi(y)}` acts on the minimal elements of `ker(pi)`
//! by `y -> x^-1 y^a x`, and the number of orbits is the constant `b`
//! attached to the pair.
//!
//! Orbit counts are computed four ways: a union-find partition driven by
//! a generating set of the fibered group (authoritative), class fusion
//! (conjugacy first, then exponent twists and coset lifts), the reversed
//! variant action `y -> x y^-a x^-1`, and a Burnside average capped at
//! [`BURNSIDE_CAP`](crate::BURNSIDE_CAP) fibered-group elements.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::abelian::{label_subfield, surjections, AbelianGroup, CycloGamma, Hom, SubfieldLabel};
use crate::invariant::{a_of, a_of_subgroup, s_min_subgroup, ExpFunction};
use crate::perm::{ElemId, NormalSubgroup, PermGroup, UnionFind};
use crate::Result;

/// Per-kernel data shared by every pair with the same `ker(pi)`.
struct KernelData {
    kernel: NormalSubgroup,
    quotient: AbelianGroup,
    /// Quotient index of each group element.
    proj: Vec<u32>,
    /// Least preimage of each quotient element.
    section: Vec<ElemId>,
    /// Minimal elements of the kernel, ascending ids.
    set: Vec<ElemId>,
}

/// A projection onto an abelian quotient paired with the surjections from
/// the cyclotomic character group that share one kernel subfield.
///
/// Surjections with equal kernel cut out the same subfield but twist the
/// action differently and may produce different orbit counts, so they are
/// kept together; the orbit engine evaluates every one and takes the best.
pub struct PiPhiPair {
    data: Arc<KernelData>,
    /// The merged surjections onto the quotient, all with kernel `kernel_h`.
    pub phis: Vec<Hom>,
    /// Common kernel of `phis`, as sorted indices into the character group.
    pub kernel_h: Vec<u32>,
    /// The fixed subfield cut out by `kernel_h`.
    pub subfield: SubfieldLabel,
}

impl PiPhiPair {
    pub fn kernel(&self) -> &NormalSubgroup {
        &self.data.kernel
    }

    pub fn quotient(&self) -> &AbelianGroup {
        &self.data.quotient
    }

    pub fn kernel_order(&self) -> usize {
        self.data.kernel.order()
    }

    /// Minimal elements of the kernel, the set the fibered group acts on.
    pub fn min_set(&self) -> &[ElemId] {
        &self.data.set
    }

    /// Quotient index of a group element under `pi`.
    pub fn project(&self, x: ElemId) -> u32 {
        self.data.proj[x as usize]
    }

    /// Least group element mapping to quotient index `b`.
    pub fn section(&self, b: u32) -> ElemId {
        self.data.section[b as usize]
    }

    /// The pair with `B = 1`, whose orbit count equals `b_M`.
    pub fn is_trivial(&self) -> bool {
        self.data.quotient.order() == 1
    }
}

/// Enumerates the pairs for `g` under `f`, with characters drawn from
/// `gamma`. Kernels run over the normal subgroups with abelian quotient
/// whose minimal exponent matches the group's; surjections sharing a
/// kernel are merged. Pairs are sorted by descending kernel order, kernel
/// members, descending character-kernel size, then character kernel, so
/// the trivial pair comes first.
pub fn enumerate_pairs(
    g: &PermGroup,
    f: &ExpFunction,
    gamma: &CycloGamma,
) -> Result<Vec<PiPhiPair>> {
    let a = a_of(g, f)?;
    let mut out = Vec::new();
    for kernel in g.abelian_normal_lattice() {
        if kernel.order() <= 1 || a_of_subgroup(g, f, &kernel)? != a {
            continue;
        }
        let (quotient, proj) = g.quotient_abelian(&kernel)?;
        let surjs = surjections(&gamma.group, &quotient);
        if surjs.is_empty() {
            continue;
        }
        let set = s_min_subgroup(g, f, &kernel)?.members;
        let mut section = vec![ElemId::MAX; quotient.order()];
        let mut filled = 0;
        for (id, &b) in proj.iter().enumerate() {
            if section[b as usize] == ElemId::MAX {
                section[b as usize] = id as ElemId;
                filled += 1;
                if filled == quotient.order() {
                    break;
                }
            }
        }
        let data = Arc::new(KernelData { kernel, quotient, proj, section, set });
        let mut by_kernel: BTreeMap<Vec<u32>, Vec<Hom>> = BTreeMap::new();
        for phi in surjs {
            by_kernel.entry(phi.kernel.clone()).or_default().push(phi);
        }
        for (kernel_h, phis) in by_kernel {
            let subfield = label_subfield(gamma, &kernel_h);
            out.push(PiPhiPair { data: data.clone(), phis, kernel_h, subfield });
        }
    }
    out.sort_by(|p, q| {
        q.kernel_order()
            .cmp(&p.kernel_order())
            .then_with(|| p.kernel().members.cmp(&q.kernel().members))
            .then_with(|| q.kernel_h.len().cmp(&p.kernel_h.len()))
            .then_with(|| p.kernel_h.cmp(&q.kernel_h))
    });
    Ok(out)
}

/// Counts orbits of the group generated by `gens` on `set`, where a
/// generator `(x, a)` sends `y` to `x^-1 y^a x`. With `reversed` each
/// generator acts through its inverse transformation `y -> x y^(1/a) x^-1`
/// instead, which must give the same partition. Exponents are read modulo
/// `modulus`, which every element order in `set` must divide. Returns the
/// count and the least member of each orbit, ascending.
pub fn twisted_count(
    g: &PermGroup,
    modulus: u64,
    set: &[ElemId],
    gens: &[(ElemId, u64)],
    reversed: bool,
) -> (u64, Vec<ElemId>) {
    let mut pos = vec![u32::MAX; g.order()];
    for (i, &m) in set.iter().enumerate() {
        pos[m as usize] = i as u32;
    }
    let mut uf = UnionFind::new(set.len());
    for &(x, a) in gens {
        let (by, exp) = if reversed {
            (g.inv(x), crate::arith::inv_mod(a, modulus))
        } else {
            (x, a % modulus)
        };
        for (i, &y) in set.iter().enumerate() {
            let z = g.conj(g.pow(y, exp), by);
            let j = pos[z as usize];
            assert!(j != u32::MAX, "twisted image left the acting set");
            uf.union(i as u32, j);
        }
    }
    let mut seen = vec![false; set.len()];
    let mut reps = Vec::new();
    for (i, &m) in set.iter().enumerate() {
        let r = uf.find(i as u32) as usize;
        if !seen[r] {
            seen[r] = true;
            reps.push(m);
        }
    }
    (reps.len() as u64, reps)
}

/// Generators of the fibered group: the kernel's generators paired with
/// exponent 1, plus one lift per character-group basis element.
fn partition_gens(pair: &PiPhiPair, gamma: &CycloGamma, phi: &Hom) -> Vec<(ElemId, u64)> {
    let mut gens: Vec<(ElemId, u64)> =
        pair.kernel().gens.iter().map(|&n| (n, 1)).collect();
    for &(gi, _) in gamma.group.basis() {
        let a = gamma.group.label(gi);
        let x = pair.section(phi.map[gi as usize]);
        gens.push((x, a));
    }
    gens
}

/// Class-fusion generators: kernel conjugation, pure exponent twists from
/// a basis of `ker(phi)`, and one lift per quotient basis element.
fn fusion_gens(pair: &PiPhiPair, gamma: &CycloGamma, phi: &Hom) -> Vec<(ElemId, u64)> {
    let mut gens: Vec<(ElemId, u64)> =
        pair.kernel().gens.iter().map(|&n| (n, 1)).collect();
    let h = gamma.group.subgroup_group(&pair.kernel_h);
    for &(hi, _) in h.basis() {
        gens.push((0, h.label(hi)));
    }
    for &(bi, _) in pair.quotient().basis() {
        let gi = (0..gamma.group.order() as u32)
            .find(|&gi| phi.map[gi as usize] == bi)
            .expect("phi is surjective");
        gens.push((pair.section(bi), gamma.group.label(gi)));
    }
    gens
}

/// Partition count for one surjection of a pair.
pub fn surjection_count(
    g: &PermGroup,
    gamma: &CycloGamma,
    pair: &PiPhiPair,
    phi: &Hom,
) -> u64 {
    twisted_count(g, gamma.modulus, pair.min_set(), &partition_gens(pair, gamma, phi), false).0
}

/// Burnside average over the fibered group: for each character element
/// the compatible coset of `x` is scanned and fixed points of
/// `y -> x^-1 y^a x` on the minimal set are totalled. Returns `None` when
/// the fibered group is larger than `cap`.
pub fn burnside_count(
    g: &PermGroup,
    gamma: &CycloGamma,
    pair: &PiPhiPair,
    phi: &Hom,
    cap: u64,
) -> Option<u64> {
    let fibered = pair.kernel_order() as u64 * gamma.group.order() as u64;
    if fibered > cap {
        return None;
    }
    let mut cosets: Vec<Vec<ElemId>> = vec![Vec::new(); pair.quotient().order()];
    for id in 0..g.order() as ElemId {
        cosets[pair.project(id) as usize].push(id);
    }
    let set = pair.min_set();
    let total: u64 = (0..gamma.group.order() as u32)
        .into_par_iter()
        .map(|gi| {
            let a = gamma.group.label(gi);
            let ypow: Vec<ElemId> = set.iter().map(|&y| g.pow(y, a)).collect();
            let mut fixed = 0u64;
            for &x in &cosets[phi.map[gi as usize] as usize] {
                for (k, &y) in set.iter().enumerate() {
                    if g.conj(ypow[k], x) == y {
                        fixed += 1;
                    }
                }
            }
            fixed
        })
        .sum();
    assert_eq!(total % fibered, 0, "Burnside sum must split into whole orbits");
    Some(total / fibered)
}

/// Orbit counts for one pair, by every available method.
#[derive(Clone, Debug)]
pub struct MethodCounts {
    pub partition: u64,
    pub class_fusion: u64,
    pub variant: u64,
    /// `None` when the fibered group exceeded the Burnside cap.
    pub burnside: Option<u64>,
}

/// The orbit count of a pair with cross-method diagnostics.
///
/// Surjections sharing a kernel present the same subfield but pair the
/// quotient with the characters differently, and their orbit counts can
/// differ. The pair's `count` is the maximum over them; `phi_index` marks
/// the first surjection attaining it, the one the method cross-checks run
/// against.
#[derive(Clone, Debug)]
pub struct OrbitReport {
    /// Largest partition count over the pair's surjections.
    pub count: u64,
    /// Least member of each orbit at the selected surjection, ascending.
    pub reps: Vec<ElemId>,
    pub methods: MethodCounts,
    /// Whether every computed method matched the partition count.
    pub agree: bool,
    /// Partition count under each surjection, in enumeration order.
    pub per_phi: Vec<u64>,
    /// Index into `phis` of the first surjection attaining `count`.
    pub phi_index: usize,
}

/// Evaluates a pair: runs the partition count under every surjection,
/// takes the largest, then cross-checks class fusion, the inverse-twist
/// variant, and the capped Burnside average at that surjection.
pub fn pair_report(
    g: &PermGroup,
    gamma: &CycloGamma,
    pair: &PiPhiPair,
    burnside_cap: u64,
) -> OrbitReport {
    let d = gamma.modulus;
    let set = pair.min_set();
    let mut per_phi = Vec::with_capacity(pair.phis.len());
    let mut best: Option<(u64, Vec<ElemId>, usize)> = None;
    for (i, phi) in pair.phis.iter().enumerate() {
        let (c, reps) = twisted_count(g, d, set, &partition_gens(pair, gamma, phi), false);
        per_phi.push(c);
        if best.as_ref().is_none_or(|(b, _, _)| c > *b) {
            best = Some((c, reps, i));
        }
    }
    let (count, reps, phi_index) = best.expect("a pair carries at least one surjection");
    let phi = &pair.phis[phi_index];
    let (class_fusion, _) = twisted_count(g, d, set, &fusion_gens(pair, gamma, phi), false);
    let (variant, _) = twisted_count(g, d, set, &partition_gens(pair, gamma, phi), true);
    let burnside = burnside_count(g, gamma, pair, phi, burnside_cap);
    let agree = class_fusion == count
        && variant == count
        && burnside.map_or(true, |b| b == count);
    OrbitReport {
        count,
        reps,
        methods: MethodCounts { partition: count, class_fusion, variant, burnside },
        agree,
        per_phi,
        phi_index,
    }
}

/// The classical orbit count: character orbits on the minimal conjugacy
/// classes. Equals the trivial pair's orbit count.
pub fn b_m(g: &PermGroup, f: &ExpFunction, gamma: &CycloGamma) -> Result<u64> {
    let a = a_of(g, f)?;
    let classes = g.classes();
    let mut uf = UnionFind::new(classes.list.len());
    for (ci, class) in classes.list.iter().enumerate() {
        if f.value(ci as u32) != a {
            continue;
        }
        for &(gi, _) in gamma.group.basis() {
            let image = g.class_of(g.pow(class.rep, gamma.group.label(gi)));
            debug_assert_eq!(f.value(image), a);
            uf.union(ci as u32, image);
        }
    }
    let mut seen = vec![false; classes.list.len()];
    let mut count = 0;
    for (ci, _) in classes.list.iter().enumerate() {
        if f.value(ci as u32) != a {
            continue;
        }
        let r = uf.find(ci as u32) as usize;
        if !seen[r] {
            seen[r] = true;
            count += 1;
        }
    }
    Ok(count)
}

/// Orbit count after coarsening the quotient by the subgroup spanned by
/// `b0`: the acting group becomes `{(x, y) : pi(x) = phi(y) mod <b0>}`,
/// applied to `set`. With `b0` spanning the whole quotient this counts
/// orbits of full conjugation plus all character twists.
pub fn coarse_count(
    g: &PermGroup,
    gamma: &CycloGamma,
    pair: &PiPhiPair,
    phi: &Hom,
    b0: &[u32],
    set: &[ElemId],
) -> u64 {
    let b = pair.quotient();
    let span = b.span(b0);
    let sub = b.subgroup_group(&span);
    let mut gens: Vec<(ElemId, u64)> =
        pair.kernel().gens.iter().map(|&n| (n, 1)).collect();
    for &(si, _) in sub.basis() {
        let bi = b
            .index_of_label(sub.label(si))
            .expect("subgroup labels are quotient labels");
        gens.push((pair.section(bi), 1));
    }
    let (_, projq) = b.quotient_by(&span);
    for &(gi, _) in gamma.group.basis() {
        let target = projq[phi.map[gi as usize] as usize];
        let bi = (0..b.order() as u32)
            .find(|&bi| projq[bi as usize] == target)
            .expect("quotient projection is onto");
        gens.push((pair.section(bi), gamma.group.label(gi)));
    }
    twisted_count(g, gamma.modulus, set, &gens, false).0
}
