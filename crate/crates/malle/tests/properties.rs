//! Randomized invariants of the orbit machinery, run over a pool of small
//! groups. Each group is built once and shared across cases.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use malle::abelian::surjections;
use malle::invariant::{a_of, d_of, s_min, ExpFunction};
use malle::perm::{ElemId, GroupExpr, PermGroup};
use malle::twist::{coarse_count, enumerate_pairs, pair_report, surjection_count, twisted_count};
use malle::{predict, BaseField, CycloGamma, PiPhiPair, PredictOptions, BURNSIDE_CAP};
use proptest::prelude::*;

const POOL: [&str; 12] = [
    "C6",
    "C12",
    "S3",
    "S4",
    "wr(C2,C2)",
    "wr(C3,C2)",
    "wr(C2,C3)",
    "wr(C3,C4)",
    "wr(C4,C2)",
    "wr(C5,C2)",
    "x(S3,C2)",
    "x(C4,C3)",
];

struct Shared {
    g: Arc<PermGroup>,
    f: ExpFunction,
    gamma: CycloGamma,
    pairs: Vec<PiPhiPair>,
}

impl std::fmt::Debug for Shared {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} under {}", self.g.expr(), self.f.name())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn shared(expr: &str, rad: bool) -> Arc<Shared> {
    static CACHE: OnceLock<Mutex<HashMap<(String, bool), Arc<Shared>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (expr.to_string(), rad);
    if let Some(s) = cache.lock().unwrap().get(&key) {
        return Arc::clone(s);
    }
    let g = Arc::new(PermGroup::build(&GroupExpr::parse(expr).unwrap(), 1 << 16).unwrap());
    let f = if rad { ExpFunction::radical(&g) } else { ExpFunction::discriminant(&g) };
    let gamma = CycloGamma::rationals(d_of(&g, &f).unwrap());
    let pairs = enumerate_pairs(&g, &f, &gamma).unwrap();
    let s = Arc::new(Shared { g, f, gamma, pairs });
    cache.lock().unwrap().insert(key, Arc::clone(&s));
    s
}

prop_compose! {
    fn any_config()(i in 0..POOL.len(), rad in any::<bool>()) -> Arc<Shared> {
        shared(POOL[i], rad)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_sizes_sum_to_the_order(s in any_config()) {
        let total: usize = s.g.classes().list.iter().map(|c| c.members.len()).sum();
        prop_assert_eq!(total, s.g.order());
    }

    #[test]
    fn minimal_set_is_closed_under_coprime_powers(s in any_config(), k in 1u64..40) {
        let set = s_min(&s.g, &s.f).unwrap();
        let d = d_of(&s.g, &s.f).unwrap();
        for &m in &set.members {
            let ord = s.g.order_of(m);
            if gcd(k, ord) == 1 {
                let p = s.g.pow(m, k);
                prop_assert!(
                    set.members.binary_search(&p).is_ok(),
                    "{}^{k} left the minimal set", m
                );
                prop_assert_eq!(d % ord, 0, "every minimal order divides d");
            }
        }
    }

    #[test]
    fn pair_projection_is_a_homomorphism(s in any_config(), seed in any::<u64>()) {
        for pair in &s.pairs {
            let q = pair.quotient();
            let x = (seed % s.g.order() as u64) as ElemId;
            let y = (seed / 7 % s.g.order() as u64) as ElemId;
            let lhs = pair.project(s.g.mul(x, y));
            let rhs = q.mul(pair.project(x), pair.project(y));
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(pair.project(s.g.inv(x)), q.inv(pair.project(x)));
        }
    }

    #[test]
    fn surjections_are_onto_homomorphisms(s in any_config()) {
        for pair in &s.pairs {
            let src = &s.gamma.group;
            let dst = pair.quotient();
            for phi in surjections(src, dst) {
                for i in 0..src.order() as u32 {
                    for j in 0..src.order() as u32 {
                        prop_assert_eq!(
                            phi.map[src.mul(i, j) as usize],
                            dst.mul(phi.map[i as usize], phi.map[j as usize])
                        );
                    }
                }
                let mut image: Vec<u32> = phi.map.clone();
                image.sort_unstable();
                image.dedup();
                prop_assert_eq!(image.len(), dst.order());
            }
        }
    }

    #[test]
    fn report_counts_match_direct_recounts(s in any_config()) {
        for pair in &s.pairs {
            let r = pair_report(&s.g, &s.gamma, pair, BURNSIDE_CAP);
            prop_assert!(r.agree);
            prop_assert_eq!(r.reps.len() as u64, r.count);
            let mut sorted = r.reps.clone();
            sorted.sort_unstable();
            prop_assert_eq!(&sorted, &r.reps, "orbit reps come out ascending");
            for (i, phi) in pair.phis.iter().enumerate() {
                prop_assert_eq!(surjection_count(&s.g, &s.gamma, pair, phi), r.per_phi[i]);
            }
        }
    }

    #[test]
    fn twist_exponents_only_matter_modulo_d(s in any_config(), lift in 0u64..4) {
        let d = s.gamma.modulus;
        for pair in &s.pairs {
            let phi = &pair.phis[0];
            let base = surjection_count(&s.g, &s.gamma, pair, phi);
            let mut gens: Vec<(ElemId, u64)> =
                pair.kernel().gens.iter().map(|&n| (n, 1)).collect();
            for &(gi, _) in s.gamma.group.basis() {
                let a = s.gamma.group.label(gi);
                gens.push((pair.section(phi.map[gi as usize]), a + d * lift));
            }
            let (lifted, _) =
                twisted_count(&s.g, d * (lift + 1), pair.min_set(), &gens, false);
            prop_assert_eq!(lifted, base);
        }
    }

    #[test]
    fn refined_prediction_sits_between_the_classical_bounds(s in any_config()) {
        let report = predict(&s.g, &s.f, &BaseField::Q, &PredictOptions::default()).unwrap();
        let a = a_of(&s.g, &s.f).unwrap();
        prop_assert_eq!(report.a, a);
        prop_assert!(report.b_m <= report.b_new.certified());
        prop_assert!(report.b_new.certified() <= report.b_new.optimistic());
        prop_assert!(report.b_new.optimistic() <= report.b_t);
        prop_assert!(report.pairs.iter().any(|p| p.b == report.b_t));
    }

    #[test]
    fn cutting_the_acting_set_never_adds_orbits(s in any_config(), pi in any::<prop::sample::Index>(), ci in any::<prop::sample::Index>()) {
        let pair = pi.get(&s.pairs);
        let cutter = ci.get(&s.pairs);
        let phi = &pair.phis[0];
        let whole = coarse_count(&s.g, &s.gamma, pair, phi, &[], pair.min_set());
        let inner: Vec<ElemId> = pair
            .min_set()
            .iter()
            .copied()
            .filter(|&x| cutter.project(x) == 0)
            .collect();
        let refined = coarse_count(&s.g, &s.gamma, pair, phi, &[], &inner);
        prop_assert!(refined <= whole);
    }
}
