//! Seeded random G-sets, maps and bispans for property tests.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::bispan::Bispan;
use crate::group::{FiniteGroup, SubgroupId};
use crate::gset::{extend_from_bases, GMap, GSet};

/// Default bound on the number of points of each random G-set.
pub const MAX_POINTS: usize = 5;

fn sum_of_cosets(group: &Arc<FiniteGroup>, types: &[SubgroupId]) -> GSet {
    if types.is_empty() {
        return GSet::empty(group.clone());
    }
    let parts: Vec<GSet> = types.iter().map(|&h| GSet::cosets(group.clone(), h)).collect();
    let refs: Vec<&GSet> = parts.iter().collect();
    GSet::sum(&refs).0
}

/// A disjoint union of orbits with at most `max_points` points (possibly empty).
pub fn random_gset<R: Rng>(group: &Arc<FiniteGroup>, max_points: usize, rng: &mut R) -> GSet {
    let mut types = Vec::new();
    let mut left = max_points;
    let orbits = rng.gen_range(0..=max_points.min(3));
    for _ in 0..orbits {
        let fits: Vec<SubgroupId> =
            group.subgroups().filter(|&h| group.order() / group.subgroup(h).order() <= left).collect();
        let Some(&h) = fits.choose(rng) else { break };
        left -= group.order() / group.subgroup(h).order();
        types.push(h);
    }
    sum_of_cosets(group, &types)
}

/// A random G-set `A` with equivariant maps to each of `bases`. Each orbit of `A` is
/// `G/H` with `H` inside the stabilizers of its chosen images, so the maps exist.
pub fn random_over<R: Rng>(bases: &[&GSet], group: &Arc<FiniteGroup>, max_points: usize, rng: &mut R) -> (GSet, Vec<GMap>) {
    let mut types = Vec::new();
    let mut images: Vec<Vec<usize>> = vec![Vec::new(); bases.len()];
    if bases.iter().all(|b| !b.is_empty()) {
        let mut left = max_points;
        let orbits = rng.gen_range(0..=max_points.min(3));
        for _ in 0..orbits {
            let picks: Vec<usize> = bases.iter().map(|b| rng.gen_range(0..b.len())).collect();
            let fits: Vec<SubgroupId> = group
                .subgroups()
                .filter(|&h| {
                    group.order() / group.subgroup(h).order() <= left
                        && bases.iter().zip(&picks).all(|(b, &p)| group.is_subgroup(h, b.stabilizer(p)))
                })
                .collect();
            let Some(&h) = fits.choose(rng) else { break };
            left -= group.order() / group.subgroup(h).order();
            types.push(h);
            for (column, &p) in images.iter_mut().zip(&picks) {
                column.push(p);
            }
        }
    }
    let a = sum_of_cosets(group, &types);
    let maps = bases
        .iter()
        .zip(&images)
        .map(|(b, imgs)| extend_from_bases(&a, b, imgs).expect("stabilizers were chosen to fit"))
        .collect();
    (a, maps)
}

/// A random equivariant map into `target`.
pub fn random_map_into<R: Rng>(target: &GSet, max_points: usize, rng: &mut R) -> GMap {
    let group = target.group().clone();
    random_over(&[target], &group, max_points, rng).1.remove(0)
}

/// A random bispan `X ← A → B → Y`.
pub fn random_bispan<R: Rng>(x: &GSet, y: &GSet, max_points: usize, rng: &mut R) -> Bispan {
    let group = x.group().clone();
    let (b, mut to_y) = random_over(&[y], &group, max_points, rng);
    let (_, mut maps) = random_over(&[x, &b], &group, max_points, rng);
    let n = maps.pop().expect("two maps");
    let r = maps.pop().expect("two maps");
    Bispan::new(r, n, to_y.pop().expect("one map")).expect("legs were built to match")
}

/// A composable pair `(first: X → Y, second: Y → Z)`.
pub fn random_composable_pair<R: Rng>(group: &Arc<FiniteGroup>, max_points: usize, rng: &mut R) -> (Bispan, Bispan) {
    let x = random_gset(group, max_points, rng);
    let y = random_gset(group, max_points, rng);
    let z = random_gset(group, max_points, rng);
    (random_bispan(&x, &y, max_points, rng), random_bispan(&y, &z, max_points, rng))
}

/// A composable triple `X → Y → Z → W`, in order of application.
pub fn random_composable_triple<R: Rng>(
    group: &Arc<FiniteGroup>,
    max_points: usize,
    rng: &mut R,
) -> (Bispan, Bispan, Bispan) {
    let sets: Vec<GSet> = (0..4).map(|_| random_gset(group, max_points, rng)).collect();
    (
        random_bispan(&sets[0], &sets[1], max_points, rng),
        random_bispan(&sets[1], &sets[2], max_points, rng),
        random_bispan(&sets[2], &sets[3], max_points, rng),
    )
}
