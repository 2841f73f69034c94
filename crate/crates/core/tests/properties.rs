use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tambara_core::bispan::{compose, Bispan};
use tambara_core::burnside::Burnside;
use tambara_core::corpus;
use tambara_core::evaluate::evaluate_bispan;
use tambara_core::functor::TambaraFunctor;
use tambara_core::group::FiniteGroup;
use tambara_core::gset::{dependent_product, maps_over, pullback, GMap};
use tambara_core::random::{random_bispan, random_composable_pair, random_composable_triple, random_gset, random_over};

fn group(pick: usize) -> Arc<FiniteGroup> {
    Arc::new(match pick % 3 {
        0 => FiniteGroup::cyclic(2),
        1 => FiniteGroup::cyclic(3),
        _ => FiniteGroup::symmetric3(),
    })
}

fn fixed_count(map: &GMap, h: tambara_core::group::SubgroupId) -> usize {
    let g = map.source().group();
    (0..map.source().len())
        .filter(|&x| g.subgroup(h).members().iter().all(|&e| map.source().act(e, x) == x))
        .count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_is_universal_on_orbits(seed: u64, pick in 0usize..3) {
        let g = group(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_gset(&g, 4, &mut rng);
        let (_, f) = random_over(&[&z], &g, 4, &mut rng);
        let (_, h) = random_over(&[&z], &g, 4, &mut rng);
        let (f, h) = (&f[0], &h[0]);
        let p = pullback(f, h).unwrap();
        prop_assert!(p.object.len() <= 16);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for q in 0..p.object.len() {
            let (x, y) = (p.left.apply(q), p.right.apply(q));
            prop_assert_eq!(f.apply(x), h.apply(y));
            pairs.push((x, y));
        }
        // maps G/K → P are the K-fixed points; they must match compatible pairs of K-fixed points
        let mut sorted = pairs.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), pairs.len());
        for k in g.subgroups() {
            let fixed = |m: &GMap, x: usize| g.subgroup(k).members().iter().all(|&e| m.source().act(e, x) == x);
            let compatible = (0..f.source().len())
                .flat_map(|x| (0..h.source().len()).map(move |y| (x, y)))
                .filter(|&(x, y)| fixed(f, x) && fixed(h, y) && f.apply(x) == h.apply(y))
                .count();
            prop_assert_eq!(fixed_count(&p.left, k), compatible);
        }
    }

    #[test]
    fn dependent_product_is_right_adjoint(seed: u64, pick in 0usize..2) {
        let g = group(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let z = random_gset(&g, 3, &mut rng);
        let (y, f) = random_over(&[&z], &g, 3, &mut rng);
        let (_, x_to_y) = random_over(&[&y], &g, 3, &mut rng);
        let (_, w) = random_over(&[&z], &g, 3, &mut rng);
        let (f, x_to_y, w) = (&f[0], &x_to_y[0], &w[0]);
        let pi = dependent_product(f, x_to_y).unwrap();
        let pulled = pullback(w, f).unwrap();
        let left = maps_over(&pulled.right, x_to_y).len();
        let right = maps_over(w, &pi.map).len();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn composition_is_associative_up_to_isomorphism(seed: u64, pick in 0usize..3) {
        let g = group(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = random_composable_triple(&g, 4, &mut rng);
        let left = compose(&c, &compose(&b, &a).unwrap()).unwrap();
        let right = compose(&compose(&c, &b).unwrap(), &a).unwrap();
        prop_assert!(left.is_isomorphic(&right));
    }

    #[test]
    fn identities_and_factorization(seed: u64, pick in 0usize..3) {
        let g = group(pick);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_gset(&g, 5, &mut rng);
        let y = random_gset(&g, 5, &mut rng);
        let b = random_bispan(&x, &y, 5, &mut rng);
        prop_assert!(compose(&Bispan::identity(&y), &b).unwrap().is_isomorphic(&b));
        prop_assert!(compose(&b, &Bispan::identity(&x)).unwrap().is_isomorphic(&b));
        let (r, n, t) = b.tnr_factorization();
        let rebuilt = compose(
            &Bispan::from_generator(tambara_core::bispan::GeneratorKind::Transfer, &t),
            &compose(
                &Bispan::from_generator(tambara_core::bispan::GeneratorKind::Norm, &n),
                &Bispan::from_generator(tambara_core::bispan::GeneratorKind::Restriction, &r),
            )
            .unwrap(),
        )
        .unwrap();
        prop_assert!(rebuilt.is_isomorphic(&b));
    }

    #[test]
    fn evaluation_is_functorial(seed: u64, pick in 0usize..3) {
        let g = group(pick);
        let a = Burnside::new(g.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (first, second) = random_composable_pair(&g, 5, &mut rng);
        let inputs: Vec<Vec<i64>> = first
            .source()
            .orbits()
            .stabilizers
            .iter()
            .map(|&h| a.sample_elements(h, 8, &mut rng).pop().unwrap())
            .collect();
        let steps = evaluate_bispan(&a, &second, &evaluate_bispan(&a, &first, &inputs).unwrap()).unwrap();
        let direct = evaluate_bispan(&a, &compose(&second, &first).unwrap(), &inputs).unwrap();
        prop_assert_eq!(direct, steps);
    }

    #[test]
    fn burnside_norm_is_multiplicative(x in proptest::collection::vec(-4i64..=4, 4), y in proptest::collection::vec(-4i64..=4, 4)) {
        let a = Burnside::new(Arc::new(FiniteGroup::symmetric3()));
        let g = a.group().clone();
        for h in g.subgroups() {
            let xs: Vec<i64> = x.iter().copied().take(a.rank(h)).collect();
            let ys: Vec<i64> = y.iter().copied().take(a.rank(h)).collect();
            for k in g.supergroups_of(h) {
                prop_assert_eq!(a.nm(k, h, &a.mul(h, &xs, &ys)), a.mul(k, &a.nm(k, h, &xs), &a.nm(k, h, &ys)));
                prop_assert_eq!(a.res(k, h, &a.nm(k, h, &xs)).len(), a.rank(h));
            }
        }
    }

    #[test]
    fn localization_at_units_is_trivial(n in 2usize..16, pick: usize) {
        let ring = tambara_core::ring::FiniteRing::zmod(n);
        let units: Vec<usize> = ring.elements().filter(|&u| ring.is_unit(u)).collect();
        let u = units[pick % units.len()];
        prop_assert_eq!(ring.localization_size(&[u]), n);
    }
}

/// Nonempty products of `gens`.
fn products(ring: &tambara_core::ring::FiniteRing, gens: &[usize]) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = gens.iter().copied().collect();
    loop {
        let next: BTreeSet<usize> =
            out.iter().flat_map(|&p| gens.iter().map(move |&q| ring.mul(p, q))).chain(out.iter().copied()).collect();
        if next == out {
            return out;
        }
        out = next;
    }
}

#[test]
fn translates_of_translates_are_products_of_translates() {
    for t in corpus::finite_corpus() {
        for x in t.all_elements() {
            let first = t.translates(x.level, &x.value);
            for x1 in &first {
                for x2 in t.translates(x1.level, &x1.value) {
                    let gens: Vec<usize> = first.iter().filter(|z| z.level == x2.level).map(|z| z.value).collect();
                    assert!(
                        products(t.level(x2.level), &gens).contains(&x2.value),
                        "{}: {x2:?} from {x1:?} from {x:?}",
                        t.name()
                    );
                }
            }
        }
    }
}
