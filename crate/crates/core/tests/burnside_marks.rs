//! The Burnside functor against an independent table-of-marks model: `φ_M(x)` counts
//! `M`-fixed points, computed straight from the group multiplication.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tambara_core::burnside::Burnside;
use tambara_core::functor::TambaraFunctor;
use tambara_core::group::{FiniteGroup, SubgroupId};

/// `|(H/L)^M|` for `M ≤ H`: cosets `aL` with `a⁻¹Ma ⊆ L`.
fn mark_of_orbit(g: &FiniteGroup, h: SubgroupId, l: SubgroupId, m: SubgroupId) -> i64 {
    let fixing = g
        .subgroup(h)
        .members()
        .iter()
        .filter(|&&a| g.is_subgroup(g.conjugate(g.inv(a), m), l))
        .count();
    (fixing / g.subgroup(l).order()) as i64
}

fn mark(a: &Burnside, h: SubgroupId, m: SubgroupId, x: &[i64]) -> i64 {
    let g = a.group();
    a.basis(h).iter().zip(x).map(|(&l, &c)| c * mark_of_orbit(g, h, l, m)).sum()
}

fn samples(a: &Burnside, h: SubgroupId, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    (0..12).map(|_| (0..a.rank(h)).map(|_| rng.gen_range(-3..=3)).collect()).collect()
}

fn groups() -> Vec<Burnside> {
    ["C2", "C3", "C4", "S3", "C2xC2"]
        .iter()
        .map(|n| Burnside::new(Arc::new(FiniteGroup::builtin(n).unwrap())))
        .collect()
}

#[test]
fn marks_are_ring_maps() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for a in groups() {
        let g = a.group().clone();
        for h in g.subgroups() {
            let xs = samples(&a, h, &mut rng);
            for x in &xs {
                for y in &xs {
                    let xy = a.mul(h, x, y);
                    for m in g.subgroups_of(h) {
                        assert_eq!(mark(&a, h, m, &xy), mark(&a, h, m, x) * mark(&a, h, m, y), "{}", g.name());
                    }
                }
            }
            for m in g.subgroups_of(h) {
                assert_eq!(mark(&a, h, m, &a.one(h)), 1);
            }
        }
    }
}

#[test]
fn marks_of_restriction_transfer_norm_and_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for a in groups() {
        let g = a.group().clone();
        for k in g.subgroups() {
            for h in g.subgroups_of(k) {
                for x in samples(&a, k, &mut rng) {
                    let r = a.res(k, h, &x);
                    for m in g.subgroups_of(h) {
                        assert_eq!(mark(&a, h, m, &r), mark(&a, k, m, &x));
                    }
                }
                for x in samples(&a, h, &mut rng) {
                    let t = a.tr(k, h, &x);
                    let n = a.nm(k, h, &x);
                    for m in g.subgroups_of(k) {
                        let expected_tr: i64 = g
                            .left_coset_reps(k, h)
                            .into_iter()
                            .filter_map(|c| {
                                let moved = g.conjugate(g.inv(c), m);
                                g.is_subgroup(moved, h).then(|| mark(&a, h, moved, &x))
                            })
                            .sum();
                        assert_eq!(mark(&a, k, m, &t), expected_tr, "tr over {}", g.name());
                        let expected_nm: i64 = g
                            .double_coset_reps_within(k, m, h)
                            .into_iter()
                            .map(|c| mark(&a, h, g.intersect(h, g.conjugate(g.inv(c), m)), &x))
                            .product();
                        assert_eq!(mark(&a, k, m, &n), expected_nm, "nm over {} with x = {x:?}", g.name());
                    }
                }
            }
            for el in g.elements() {
                let target = g.conjugate(el, k);
                for x in samples(&a, k, &mut rng) {
                    let c = a.conj(el, k, &x);
                    for m in g.subgroups_of(k) {
                        assert_eq!(mark(&a, target, g.conjugate(el, m), &c), mark(&a, k, m, &x));
                    }
                }
            }
        }
    }
}

#[test]
fn marks_separate_points_so_only_zero_is_nilpotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for a in groups() {
        let g = a.group().clone();
        for h in g.subgroups() {
            for x in samples(&a, h, &mut rng) {
                let zero_marks = g.subgroups_of(h).into_iter().all(|m| mark(&a, h, m, &x) == 0);
                assert_eq!(zero_marks, x.iter().all(|&c| c == 0));
                assert_eq!(a.is_nilpotent(h, &x), zero_marks);
            }
        }
    }
}
