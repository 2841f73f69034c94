use std::sync::Arc;

use tambara_core::bispan::{Bispan, GeneratorKind};
use tambara_core::burnside::Burnside;
use tambara_core::corpus;
use tambara_core::functor::{unit_to_fixed_points, Element, FiniteTambara, TambaraFunctor};
use tambara_core::group::FiniteGroup;
use tambara_core::gset::{dependent_product, exponential_diagram, pullback, GMap, GSet};
use tambara_core::ideal::{self, FiniteIdeal, RadicalMembership};
use tambara_core::spectrum::{self, SpectrumSpace};

/// Subgroups by brute force: nonempty subsets closed under multiplication.
fn brute_force_subgroups(g: &FiniteGroup) -> usize {
    let n = g.order();
    (1u64..1 << n)
        .filter(|&mask| {
            mask & 1 == 1
                && (0..n).all(|a| {
                    mask >> a & 1 == 0 || (0..n).all(|b| mask >> b & 1 == 0 || mask >> g.mul(a, b) & 1 == 1)
                })
        })
        .count()
}

#[test]
fn subgroup_counts() {
    for (name, count) in [("C2", 2), ("S3", 6), ("C4", 3), ("C2xC2", 5)] {
        let g = FiniteGroup::builtin(name).unwrap();
        assert_eq!(g.subgroup_count(), count);
        assert_eq!(brute_force_subgroups(&g), count, "{name}");
    }
}

#[test]
fn double_cosets_partition_the_group() {
    let g = FiniteGroup::symmetric3();
    for h in g.subgroups() {
        for k in g.subgroups() {
            let reps = g.double_coset_reps(h, k);
            let mut seen = vec![0; g.order()];
            for &r in &reps {
                for &a in g.subgroup(h).members() {
                    for &b in g.subgroup(k).members() {
                        seen[g.mul(g.mul(a, r), b)] = 1;
                    }
                }
            }
            // the double cosets of the reps cover G and are pairwise distinct
            assert!(seen.iter().all(|&s| s == 1));
            let sizes: usize = reps
                .iter()
                .map(|&r| {
                    let mut set = std::collections::BTreeSet::new();
                    for &a in g.subgroup(h).members() {
                        for &b in g.subgroup(k).members() {
                            set.insert(g.mul(g.mul(a, r), b));
                        }
                    }
                    set.len()
                })
                .sum();
            assert_eq!(sizes, g.order());
        }
    }
    let order_two = g.subgroups().find(|&h| g.subgroup(h).order() == 2).unwrap();
    assert_eq!(g.double_coset_reps(order_two, order_two).len(), 2);
    assert_eq!(g.double_coset_reps(g.whole(), g.whole()), vec![0]);
    let c2 = FiniteGroup::cyclic(2);
    assert_eq!(c2.double_coset_reps(c2.trivial(), c2.trivial()), vec![0, 1]);
}

#[test]
fn pullbacks_and_dependent_products() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let free = GSet::cosets(g.clone(), g.trivial());
    let q = GMap::to_point(&free);
    let p = pullback(&q, &q).unwrap();
    assert_eq!(p.object.len(), 4);
    assert_eq!(p.object.orbit_type(), vec![g.trivial(), g.trivial()]);

    let empty = GSet::empty(g.clone());
    assert!(pullback(&GMap::from_empty(q.target()), &q).unwrap().object.is_empty());

    let (two, _) = GSet::sum(&[&free, &free]);
    let fold = GMap::new(two.clone(), free.clone(), vec![0, 1, 0, 1]).unwrap();
    let pi = dependent_product(&q, &fold).unwrap();
    assert_eq!(pi.map.source().len(), 4);
    assert_eq!(pi.sections.len(), 4);

    let id = GMap::identity(&free);
    let diagram = exponential_diagram(&id, &id).unwrap();
    for m in [&diagram.pi, &diagram.counit, &diagram.projection, &diagram.pulled_back] {
        assert!(m.is_isomorphism());
    }
    // nothing over a nonempty fiber has a section when the source is empty
    let none = dependent_product(&q, &GMap::from_empty(&free)).unwrap();
    assert!(none.map.source().is_empty());
    let over_empty = dependent_product(&GMap::from_empty(&GSet::trivial(g.clone(), 1)), &GMap::identity(&empty)).unwrap();
    assert_eq!(over_empty.map.source().len(), 1);
}

#[test]
fn orbit_decompositions() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let x = GSet::new(g.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
    let orbits = x.orbit_decomposition();
    assert_eq!(orbits.len(), 2);
    assert_eq!(orbits[0].stabilizer, g.trivial());
    assert_eq!(orbits[1].stabilizer, g.whole());
    let s3 = Arc::new(FiniteGroup::symmetric3());
    let regular = GSet::cosets(s3.clone(), s3.trivial());
    assert_eq!(regular.orbit_type(), vec![s3.trivial()]);
}

#[test]
fn generators_and_units() {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let x = GSet::cosets(g.clone(), g.trivial());
    let id = GMap::identity(&x);
    assert!(Bispan::from_generator(GeneratorKind::Transfer, &id).is_isomorphic(&Bispan::identity(&x)));
    let q = GMap::quotient(&g, g.trivial(), g.whole());
    let r = Bispan::from_generator(GeneratorKind::Restriction, &q);
    assert_eq!(r.restriction(), &q);
    assert!(r.norm().is_isomorphism() && r.transfer().is_isomorphism());
}

#[test]
fn quotients_and_zero_functors() {
    let t = corpus::fp_z4_c2();
    let same = t.quotient(FiniteIdeal::zero(&t).levels()).unwrap();
    assert_eq!(same.levels().iter().map(|r| r.size()).collect::<Vec<_>>(), vec![4, 4]);
    let gone = t.quotient(FiniteIdeal::full(&t).levels()).unwrap();
    assert!(gone.is_zero_functor());
    assert!(!t.is_zero_functor());
    assert!(!Burnside::new(Arc::new(FiniteGroup::cyclic(2))).is_zero_functor());
    let zero = FiniteTambara::zero(Arc::new(FiniteGroup::cyclic(2)));
    let (_, morphism, violations) = unit_to_fixed_points(&zero);
    assert!(violations.is_empty());
    assert!(morphism.components.iter().all(|c| c.iter().all(|&v| v == 0)));
}

#[test]
fn burnside_translates_and_products() {
    let a = Burnside::new(Arc::new(FiniteGroup::cyclic(2)));
    let g = a.group().clone();
    let (e, top) = (g.trivial(), g.whole());
    let t = Element::new(top, vec![1, 0]);
    let translates = a.translates(top, &t.value);
    assert!(translates.contains(&t));
    assert!(translates.contains(&Element::new(e, vec![2])));
    assert!(translates.contains(&Element::new(top, vec![1, 2])));
    assert!(a.translates(top, &a.zero(top)).iter().all(|z| a.is_zero(z.level, &z.value)));

    let one = Element::new(top, a.one(top));
    assert!(ideal::generalized_products(&a, &one, &one).iter().any(|w| w.product == one));
    let zero = Element::new(top, a.zero(top));
    assert!(ideal::generalized_products(&a, &t, &zero).iter().all(|w| a.is_zero(w.product.level, &w.product.value)));
    assert!(ideal::q_predicate(&a, &t, &t, |_| true).0);
    assert!(ideal::q_predicate(&a, &zero, &t, |z| a.is_zero(z.level, &z.value)).0);
    for p in [2usize, 3] {
        let a = Burnside::new(Arc::new(FiniteGroup::cyclic(p)));
        assert!(!a.is_nilpotent(a.group().whole(), &vec![1, -(p as i64)]));
    }
}

#[test]
fn ideal_arithmetic_on_the_corpus() {
    for t in corpus::finite_corpus() {
        let ideals = ideal::all_ideals(&t);
        let full = FiniteIdeal::full(&t);
        let zero = FiniteIdeal::zero(&t);
        for i in &ideals {
            assert_eq!(&ideal::sum(&t, i, &zero), i);
            assert!(ideal::product(&t, i, &full).is_subset(i));
            let rad = ideal::radical(&t, i);
            assert_eq!(ideal::radical(&t, &rad), rad);
            for j in &ideals {
                assert!(t.check_ideal(ideal::sum(&t, i, j).levels()).is_ok());
                let ij = ideal::product(&t, i, j);
                assert!(ij.is_subset(&ideal::intersection(i, j)), "{}", t.name());
                for k in &ideals {
                    let left = ideal::product(&t, &ideal::sum(&t, i, j), k);
                    let right = ideal::sum(&t, &ideal::product(&t, i, k), &ideal::product(&t, j, k));
                    assert_eq!(left, right, "{}", t.name());
                }
            }
        }
        assert_eq!(ideal::radical(&t, &zero), ideal::nilradical_levelwise(&t));
    }
}

#[test]
fn closures_and_principal_membership() {
    let t = corpus::fp_z4_c3();
    let g = t.group().clone();
    assert_eq!(ideal::closure(&t, &[]), FiniteIdeal::zero(&t));
    assert_eq!(ideal::closure(&t, &[Element::new(g.whole(), 1)]), FiniteIdeal::full(&t));
    for y in t.all_elements() {
        assert!(ideal::principal_membership(&t, &y, &y));
        assert!(ideal::principal_membership(&t, &Element::new(g.trivial(), 0), &y));
        let closed = ideal::closure(&t, std::slice::from_ref(&y));
        assert_eq!(ideal::closure_of_sets(&t, closed.levels().to_vec()), closed);
    }
}

#[test]
fn primality_examples() {
    let frob = corpus::fp_f4_frobenius_c2();
    assert!(ideal::is_prime(&frob, &FiniteIdeal::zero(&frob)).prime);
    assert!(!ideal::is_prime(&frob, &FiniteIdeal::full(&frob)).prime);
    let swap = corpus::fp_swap_c2();
    let check = ideal::is_prime(&swap, &FiniteIdeal::zero(&swap));
    assert!(check.prime && check.counterexample.is_none());
    let z4 = corpus::fp_z4_c2();
    let p = ideal::maximal_disjoint_prime(&z4, z4.group().whole(), &[1]).unwrap();
    assert!(ideal::is_prime(&z4, &p).prime);
    let nil = ideal::nilradical_levelwise(&z4);
    assert_eq!(nil.members(z4.group().trivial()), vec![0, 2]);
    assert_eq!(nil.members(z4.group().whole()), vec![0, 2]);
}

#[test]
fn radical_membership_examples() {
    let t = corpus::fp_z8_c2();
    let e = t.group().trivial();
    let i = ideal::closure(&t, &[Element::new(e, 4)]);
    assert_eq!(ideal::nakaoka_radical_membership(&t, &Element::new(e, 4), &i, None), RadicalMembership::Member { n: 1 });
    assert!(!ideal::nakaoka_radical_membership(&t, &Element::new(e, 1), &i, None).is_member());
    assert!(ideal::nakaoka_radical_membership(&t, &Element::new(e, 2), &FiniteIdeal::zero(&t), None).is_member());
}

#[test]
fn spectrum_examples() {
    let f2 = corpus::fp_f2_c2();
    assert_eq!(spectrum::enumerate_primes(&f2), vec![FiniteIdeal::zero(&f2)]);
    assert_eq!(spectrum::nil_via_primes(&f2), FiniteIdeal::zero(&f2));
    let z4 = corpus::fp_z4_c2();
    assert_eq!(spectrum::nil_via_primes(&z4).members(z4.group().trivial()), vec![0, 2]);

    for t in corpus::finite_corpus() {
        let space = SpectrumSpace::new(&t);
        let n = space.len();
        let top = t.group().whole();
        assert_eq!(spectrum::v_closed(&space.points, &FiniteIdeal::zero(&t)).count_ones(..), n);
        assert!(spectrum::d_open(&space.points, &Element::new(top, t.zero(top))).is_clear());
        assert_eq!(spectrum::d_open(&space.points, &Element::new(top, t.one(top))).count_ones(..), n);
        let one = Element::new(top, t.one(top));
        let dec = spectrum::d_intersection_decomposition(&t, &space.points, &one, &one);
        assert!(dec.holds);
        let zero = Element::new(top, t.zero(top));
        let dec = spectrum::d_intersection_decomposition(&t, &space.points, &zero, &one);
        assert!(dec.products.iter().all(|z| spectrum::d_open(&space.points, z).is_clear()));
        let elements = t.all_elements();
        for f in &elements {
            for f2 in &elements {
                let mut union = spectrum::d_open(&space.points, f);
                union.union_with(&spectrum::d_open(&space.points, f2));
                let joint = ideal::closure(&t, &[f.clone(), f2.clone()]);
                let mut complement = spectrum::v_closed(&space.points, &joint);
                complement.toggle_range(..);
                assert_eq!(union, complement, "{}", t.name());
            }
        }
    }
}

#[test]
fn kilpotence_examples() {
    let f4 = corpus::fp_f4_frobenius_c2();
    let g = f4.group().clone();
    let source = f4.fixed_point_source().unwrap();
    for x in 1..4 {
        assert!(!spectrum::localization_oracle_fp(&g, source, x));
    }
    let z8 = corpus::fp_z8_c2();
    assert!(spectrum::localization_oracle_fp(z8.group(), z8.fixed_point_source().unwrap(), 4));
    for t in corpus::finite_corpus() {
        let top = t.group().whole();
        assert!(!spectrum::is_kilpotent(&t, &Element::new(top, t.one(top))));
        // nilpotent implies kilpotent, and the kernel of restriction to e is kilpotent
        let e = t.group().trivial();
        for x in t.all_elements() {
            let nil = t.level(x.level).is_nilpotent(x.value);
            let in_kernel = t.res(x.level, e, &x.value) == t.zero(e);
            if nil || in_kernel {
                assert!(spectrum::is_kilpotent(&t, &x), "{}: {x:?}", t.name());
            }
        }
    }
    let f2 = corpus::fp_f2_c2();
    let kil = spectrum::kilradical_trivial_action(&f2).unwrap();
    assert!(kil.is_zero());

    let a = Burnside::new(Arc::new(FiniteGroup::cyclic(2)));
    let lattice = spectrum::kil_burnside_level(&a, a.group().whole()).unwrap();
    let basis = lattice.basis();
    assert_eq!(basis.len(), 1);
    assert!(basis[0] == vec![1, -2] || basis[0] == vec![-1, 2]);
    assert_eq!(spectrum::kil_burnside_level(&a, a.group().trivial()).unwrap().rank(), 0);
}
