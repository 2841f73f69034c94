//! Tambara ideals: closure, arithmetic, multiplicative translates, the Q predicate,
//! primality, radicals and powers.
//!
//! Ideals of levelwise-finite functors are explicit subsets of each level. Ideals of
//! the Burnside functor are handled through principal ideals, which are integer
//! lattices in each level and are decided exactly.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::burnside::Burnside;
use crate::functor::{Element, FiniteTambara, TambaraFunctor};
use crate::group::SubgroupId;
use crate::lattice::{Lattice, LatticeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("the multiplicative set is empty")]
    EmptySet,
    #[error("the multiplicative set contains 0")]
    ZeroInSet,
    #[error("the set is not multiplicatively closed: {0}")]
    NotMultiplicative(String),
    #[error("element {0} is not in the level it claims")]
    BadElement(String),
    #[error("no ideal disjoint from the set is prime")]
    NoPrime,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// A Tambara ideal of a levelwise-finite functor: one subset per level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteIdeal {
    levels: Vec<FixedBitSet>,
}

impl FiniteIdeal {
    /// Wraps level sets without checking closure; see [`FiniteTambara::check_ideal`].
    pub fn from_levels(levels: Vec<FixedBitSet>) -> Self {
        FiniteIdeal { levels }
    }

    pub fn zero(t: &FiniteTambara) -> Self {
        FiniteIdeal { levels: t.levels().iter().map(|r| r.zero_ideal()).collect() }
    }

    pub fn full(t: &FiniteTambara) -> Self {
        FiniteIdeal { levels: t.levels().iter().map(|r| r.full_set()).collect() }
    }

    pub fn levels(&self) -> &[FixedBitSet] {
        &self.levels
    }

    pub fn level(&self, h: SubgroupId) -> &FixedBitSet {
        &self.levels[h.0]
    }

    pub fn members(&self, h: SubgroupId) -> Vec<usize> {
        self.levels[h.0].ones().collect()
    }

    pub fn contains(&self, x: &Element<usize>) -> bool {
        self.levels[x.level.0].contains(x.value)
    }

    pub fn is_subset(&self, other: &FiniteIdeal) -> bool {
        self.levels.iter().zip(&other.levels).all(|(a, b)| a.is_subset(b))
    }

    /// Proper means different from the whole functor; a zero functor has no proper ideals.
    pub fn is_proper(&self, t: &FiniteTambara) -> bool {
        self.levels.iter().zip(t.levels()).any(|(s, r)| s.count_ones(..) < r.size())
    }

    pub fn size(&self) -> usize {
        self.levels.iter().map(|s| s.count_ones(..)).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|s| s.count_ones(..) == 1)
    }

    /// Levelwise labels, for reports.
    pub fn describe(&self, t: &FiniteTambara) -> Vec<(String, Vec<String>)> {
        let g = t.group();
        g.subgroups()
            .map(|h| {
                let ring = t.level(h);
                (g.subgroup_label(h), self.levels[h.0].ones().map(|x| ring.label(x).to_string()).collect())
            })
            .collect()
    }
}

pub fn is_ideal(t: &FiniteTambara, levels: &[FixedBitSet]) -> bool {
    t.check_ideal(levels).is_ok()
}

/// Smallest Tambara ideal containing the given sets: levelwise ring-ideal closure
/// alternated with images under `res`, `tr`, `nm` and `conj` until nothing changes.
pub fn closure_of_sets(t: &FiniteTambara, mut sets: Vec<FixedBitSet>) -> FiniteIdeal {
    let g = t.group().clone();
    loop {
        for h in g.subgroups() {
            let ring = t.level(h);
            sets[h.0] = ring.ideal_generated(sets[h.0].ones().collect::<Vec<_>>());
        }
        let before: Vec<usize> = sets.iter().map(|s| s.count_ones(..)).collect();
        for k in g.subgroups() {
            for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
                let down: Vec<usize> = sets[k.0].ones().map(|x| t.res(k, h, &x)).collect();
                sets[h.0].extend(down);
                let up: Vec<usize> =
                    sets[h.0].ones().flat_map(|x| [t.tr(k, h, &x), t.nm(k, h, &x)]).collect();
                sets[k.0].extend(up);
            }
        }
        for e in g.elements().skip(1) {
            for h in g.subgroups() {
                let target = g.conjugate(e, h);
                let moved: Vec<usize> = sets[h.0].ones().map(|x| t.conj(e, h, &x)).collect();
                sets[target.0].extend(moved);
            }
        }
        let after: Vec<usize> = sets.iter().map(|s| s.count_ones(..)).collect();
        if before == after {
            return FiniteIdeal { levels: sets };
        }
    }
}

/// `⟨generators⟩`.
pub fn closure(t: &FiniteTambara, generators: &[Element<usize>]) -> FiniteIdeal {
    let mut sets: Vec<FixedBitSet> = t.levels().iter().map(|r| r.zero_ideal()).collect();
    for x in generators {
        sets[x.level.0].insert(x.value);
    }
    closure_of_sets(t, sets)
}

/// `(I + J)(G/H) = I(G/H) + J(G/H)`.
pub fn sum(t: &FiniteTambara, i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
    let levels = t
        .group()
        .subgroups()
        .map(|h| {
            let ring = t.level(h);
            let sums: Vec<usize> = i.levels[h.0]
                .ones()
                .flat_map(|a| j.levels[h.0].ones().map(move |b| ring.add(a, b)))
                .collect();
            ring.set_of(sums)
        })
        .collect();
    FiniteIdeal { levels }
}

/// The smallest ideal containing every `I(G/H)·J(G/H)`.
pub fn product(t: &FiniteTambara, i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
    let sets = t
        .group()
        .subgroups()
        .map(|h| {
            let ring = t.level(h);
            let products: Vec<usize> = i.levels[h.0]
                .ones()
                .flat_map(|a| j.levels[h.0].ones().map(move |b| ring.mul(a, b)))
                .collect();
            ring.set_of(products)
        })
        .collect();
    closure_of_sets(t, sets)
}

pub fn intersection(i: &FiniteIdeal, j: &FiniteIdeal) -> FiniteIdeal {
    let levels = i
        .levels
        .iter()
        .zip(&j.levels)
        .map(|(a, b)| {
            let mut s = a.clone();
            s.intersect_with(b);
            s
        })
        .collect();
    FiniteIdeal { levels }
}

/// Levelwise radical `√I(G/H)`.
pub fn radical(t: &FiniteTambara, i: &FiniteIdeal) -> FiniteIdeal {
    let levels = t.group().subgroups().map(|h| t.level(h).radical(&i.levels[h.0])).collect();
    FiniteIdeal { levels }
}

/// `N(T)`: the nilradical of each level.
pub fn nilradical_levelwise(t: &FiniteTambara) -> FiniteIdeal {
    radical(t, &FiniteIdeal::zero(t))
}

/// All Tambara ideals: tuples of levelwise ring ideals that pass the closure check,
/// in canonical order.
pub fn all_ideals(t: &FiniteTambara) -> Vec<FiniteIdeal> {
    let per_level: Vec<Vec<FixedBitSet>> = t.levels().iter().map(|r| r.ideals()).collect();
    let total: usize = per_level.iter().map(Vec::len).product();
    let mut found: Vec<FiniteIdeal> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let levels: Vec<FixedBitSet> = per_level
                .iter()
                .map(|options| {
                    let pick = code % options.len();
                    code /= options.len();
                    options[pick].clone()
                })
                .collect();
            is_ideal(t, &levels).then_some(FiniteIdeal { levels })
        })
        .collect();
    found.sort_by_key(canonical_key);
    found
}

fn canonical_key(i: &FiniteIdeal) -> (usize, Vec<Vec<usize>>) {
    (i.size(), i.levels.iter().map(|s| s.ones().collect()).collect())
}

/// Products of a multiplicative translate of `x` with one of `y` lying in the same level,
/// deduplicated; each with the pair of translates producing it.
pub fn generalized_products<T: TambaraFunctor + ?Sized>(
    t: &T,
    x: &Element<T::Elem>,
    y: &Element<T::Elem>,
) -> Vec<QWitness<T::Elem>> {
    let tx = t.translates(x.level, &x.value);
    let ty = t.translates(y.level, &y.value);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in &tx {
        for b in ty.iter().filter(|b| b.level == a.level) {
            let p = Element::new(a.level, t.mul(a.level, &a.value, &b.value));
            if seen.insert(p.clone()) {
                out.push(QWitness { product: p, left: a.clone(), right: b.clone() });
            }
        }
    }
    out
}

/// A generalized product together with the two translates it is the product of.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QWitness<E> {
    pub product: Element<E>,
    pub left: Element<E>,
    pub right: Element<E>,
}

/// `Q(x, y, I)`: every generalized product of `x` and `y` lies in `I`. On failure the
/// offending product is returned.
pub fn q_predicate<T: TambaraFunctor + ?Sized>(
    t: &T,
    x: &Element<T::Elem>,
    y: &Element<T::Elem>,
    member: impl Fn(&Element<T::Elem>) -> bool,
) -> (bool, Option<QWitness<T::Elem>>) {
    let tx = t.translates(x.level, &x.value);
    let ty = t.translates(y.level, &y.value);
    for a in &tx {
        for b in ty.iter().filter(|b| b.level == a.level) {
            let p = Element::new(a.level, t.mul(a.level, &a.value, &b.value));
            if !member(&p) {
                return (false, Some(QWitness { product: p, left: a.clone(), right: b.clone() }));
            }
        }
    }
    (true, None)
}

/// `Q(x, y, I)` for an explicit finite ideal.
pub fn q_finite(t: &FiniteTambara, x: &Element<usize>, y: &Element<usize>, i: &FiniteIdeal) -> bool {
    q_predicate(t, x, y, |p| i.contains(p)).0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub prime: bool,
    pub proper: bool,
    /// A pair with `Q(x, y, I)` but `x, y ∉ I`.
    pub counterexample: Option<(Element<usize>, Element<usize>)>,
}

/// Primality by the Q criterion: `I` is proper and `Q(x, y, I)` forces `x ∈ I` or `y ∈ I`.
pub fn is_prime(t: &FiniteTambara, i: &FiniteIdeal) -> PrimeCheck {
    if !i.is_proper(t) {
        return PrimeCheck { prime: false, proper: false, counterexample: None };
    }
    let outside: Vec<Element<usize>> = t.all_elements().into_iter().filter(|x| !i.contains(x)).collect();
    let counterexample = outside.par_iter().enumerate().find_map_first(|(n, x)| {
        outside[n..].iter().find(|y| q_finite(t, x, y, i)).map(|y| (x.clone(), y.clone()))
    });
    PrimeCheck { prime: counterexample.is_none(), proper: true, counterexample }
}

/// `Iⁿ` by repeated ideal products.
pub fn power(t: &FiniteTambara, i: &FiniteIdeal, n: usize) -> FiniteIdeal {
    assert!(n >= 1);
    let mut p = i.clone();
    for _ in 1..n {
        p = product(t, &p, i);
    }
    p
}

/// `⟨x⟩ⁿ` from the generator description: sums of transfers `tr^K_L(r·a₁⋯aₙ)` with each
/// `aᵢ` a multiplicative translate of `x` in `T(G/L)`. Independent of [`product`].
pub fn principal_power_via_generators(t: &FiniteTambara, x: &Element<usize>, n: usize) -> FiniteIdeal {
    let g = t.group();
    let translates = t.translates(x.level, &x.value);
    let mut sets: Vec<FixedBitSet> = t.levels().iter().map(|r| r.zero_ideal()).collect();
    for l in g.subgroups() {
        let ring = t.level(l);
        let here: Vec<usize> = translates.iter().filter(|a| a.level == l).map(|a| a.value).collect();
        // all products of n translates at level L
        let mut products: BTreeSet<usize> = [ring.one()].into();
        for _ in 0..n {
            products = products.iter().flat_map(|&p| here.iter().map(move |&a| ring.mul(p, a))).collect();
        }
        let ideal = ring.ideal_generated(products);
        for k in g.supergroups_of(l) {
            let images: Vec<usize> = ideal.ones().map(|v| t.tr(k, l, &v)).collect();
            sets[k.0].extend(images);
        }
    }
    // additive closure of the transferred elements
    let levels = g.subgroups().map(|k| t.level(k).ideal_generated(sets[k.0].ones().collect::<Vec<_>>())).collect();
    FiniteIdeal { levels }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum RadicalMembership {
    /// `⟨x⟩ⁿ ⊆ I` at this `n`.
    Member { n: usize },
    /// The powers of `⟨x⟩` stabilized at this `n` without entering `I`.
    NotMember { stable_at: usize },
    /// Neither happened within the bound.
    Inconclusive { n_max: usize },
}

impl RadicalMembership {
    pub fn is_member(&self) -> bool {
        matches!(self, RadicalMembership::Member { .. })
    }
}

/// The pigeonhole bound `s·(m − 1) + 1`, where `s` counts the distinct multiplicative
/// translates of `x` and `m` is the least exponent with `zᵐ ∈ I` for every translate `z`.
/// If some translate has no power in `I`, `m` is replaced by the largest level size.
pub fn pigeonhole_bound(t: &FiniteTambara, x: &Element<usize>, i: &FiniteIdeal) -> usize {
    let translates = t.translates(x.level, &x.value);
    let fallback = t.levels().iter().map(|r| r.size()).max().unwrap_or(1);
    let m = translates
        .iter()
        .map(|z| {
            let ring = t.level(z.level);
            let mut p = z.value;
            (1..=ring.size())
                .find(|_| {
                    let inside = i.level(z.level).contains(p);
                    p = ring.mul(p, z.value);
                    inside
                })
                .unwrap_or(fallback)
        })
        .max()
        .unwrap_or(1);
    translates.len() * (m.max(1) - 1) + 1
}

/// Decides `⟨x⟩ⁿ ⊆ I` for some `n ≤ n_max` by power iteration; `n_max` defaults to
/// [`pigeonhole_bound`].
pub fn nakaoka_radical_membership(
    t: &FiniteTambara,
    x: &Element<usize>,
    i: &FiniteIdeal,
    n_max: Option<usize>,
) -> RadicalMembership {
    let n_max = n_max.unwrap_or_else(|| pigeonhole_bound(t, x, i));
    let base = closure(t, std::slice::from_ref(x));
    let mut p = base.clone();
    for n in 1..=n_max {
        if p.is_subset(i) {
            return RadicalMembership::Member { n };
        }
        let next = product(t, &p, &base);
        if next == p {
            return RadicalMembership::NotMember { stable_at: n };
        }
        p = next;
    }
    RadicalMembership::Inconclusive { n_max }
}

/// An ideal maximal among those whose level `H` avoids `S`; `S` must be a nonempty
/// multiplicatively closed subset of `T(G/H)` not containing 0. The choice among
/// maximal candidates is the first in canonical order.
pub fn maximal_disjoint_prime(
    t: &FiniteTambara,
    h: SubgroupId,
    s: &[usize],
) -> Result<FiniteIdeal, IdealError> {
    let ring = t.level(h);
    if s.is_empty() {
        return Err(IdealError::EmptySet);
    }
    if let Some(&bad) = s.iter().find(|&&x| x >= ring.size()) {
        return Err(IdealError::BadElement(bad.to_string()));
    }
    if s.contains(&ring.zero()) {
        return Err(IdealError::ZeroInSet);
    }
    let set = ring.set_of(s.iter().copied());
    for &a in s {
        for &b in s {
            if !set.contains(ring.mul(a, b)) {
                return Err(IdealError::NotMultiplicative(format!(
                    "{}·{} = {}",
                    ring.label(a),
                    ring.label(b),
                    ring.label(ring.mul(a, b))
                )));
            }
        }
    }
    let candidates: Vec<FiniteIdeal> =
        all_ideals(t).into_iter().filter(|i| i.level(h).is_disjoint(&set)).collect();
    let maximal = candidates
        .iter()
        .find(|i| !candidates.iter().any(|j| j != *i && i.is_subset(j)))
        .ok_or(IdealError::NoPrime)?;
    if is_prime(t, maximal).prime {
        Ok(maximal.clone())
    } else {
        Err(IdealError::NoPrime)
    }
}

/// A principal ideal `⟨y⟩` of the Burnside functor: level `K` is the integer span of
/// `tr^K_L(b·y')` over `L ≤ K`, basis elements `b` of `A(L)` and translates `y'` of `y`
/// in level `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeIdeal {
    pub generator: Element<Vec<i64>>,
    pub levels: Vec<Lattice>,
}

impl LatticeIdeal {
    pub fn contains(&self, z: &Element<Vec<i64>>) -> bool {
        self.levels[z.level.0].contains(&z.value)
    }
}

pub fn burnside_principal_ideal(a: &Burnside, y: &Element<Vec<i64>>) -> Result<LatticeIdeal, IdealError> {
    let g = a.group();
    if !a.contains(y.level, &y.value) {
        return Err(IdealError::BadElement(format!("{:?}", y.value)));
    }
    let translates = a.translates(y.level, &y.value);
    let levels = g
        .subgroups()
        .map(|k| {
            let mut gens = Vec::new();
            for l in g.subgroups_of(k) {
                for yp in translates.iter().filter(|z| z.level == l) {
                    for i in 0..a.rank(l) {
                        let mut b = a.zero(l);
                        b[i] = 1;
                        gens.push(a.tr(k, l, &a.mul(l, &b, &yp.value)));
                    }
                }
            }
            Lattice::span(a.rank(k), &gens)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(LatticeIdeal { generator: y.clone(), levels })
}

/// `z ∈ ⟨y⟩`, exactly, for finite functors.
pub fn principal_membership(t: &FiniteTambara, z: &Element<usize>, y: &Element<usize>) -> bool {
    closure(t, std::slice::from_ref(y)).contains(z)
}

/// `z ∈ ⟨y⟩` in the Burnside functor, decided by integer lattice membership.
pub fn burnside_principal_membership(
    a: &Burnside,
    z: &Element<Vec<i64>>,
    y: &Element<Vec<i64>>,
) -> Result<bool, IdealError> {
    Ok(burnside_principal_ideal(a, y)?.contains(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor::FixedPointSource;
    use crate::group::FiniteGroup;
    use crate::ring::FiniteRing;
    use std::sync::Arc;

    fn fp_z4() -> FiniteTambara {
        let g = Arc::new(FiniteGroup::cyclic(2));
        FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, FiniteRing::zmod(4)))
    }

    fn fp_swap() -> FiniteTambara {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let ring = FiniteRing::builtin("F2xF2").unwrap();
        let src = FixedPointSource::new(&g, ring, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).unwrap();
        FiniteTambara::fixed_point(g, src)
    }

    #[test]
    fn closure_of_two_in_z4() {
        let t = fp_z4();
        let g = t.group().clone();
        let (e, top) = (g.trivial(), g.whole());
        let at_e = closure(&t, &[Element::new(e, 2)]);
        assert_eq!(at_e.members(e), vec![0, 2]);
        // tr(2) = 4 = 0 and nm(2) = 4 = 0, so nothing reaches the top level
        assert_eq!(at_e.members(top), vec![0]);
        let at_top = closure(&t, &[Element::new(top, 2)]);
        assert_eq!(at_top.members(e), vec![0, 2]);
        assert_eq!(at_top.members(top), vec![0, 2]);
        let q = t.quotient(at_top.levels()).unwrap();
        assert_eq!(q.level(e).size(), 2);
        assert_eq!(q.level(top).size(), 2);
        assert!(closure(&t, &[]).is_zero());
        assert!(!closure(&t, &[Element::new(e, 1)]).is_proper(&t));
    }

    #[test]
    fn ideals_of_fp_z4() {
        let t = fp_z4();
        let all = all_ideals(&t);
        // (0,0), (0 at top, {0,2} at e), ({0,2}, {0,2}), whole
        assert_eq!(all.len(), 4);
        let primes: Vec<_> = all.iter().filter(|i| is_prime(&t, i).prime).collect();
        assert_eq!(primes.len(), 1);
        assert_eq!(*primes[0], nilradical_levelwise(&t));
    }

    #[test]
    fn zero_ideal_of_swap_functor_is_prime() {
        let t = fp_swap();
        let g = t.group().clone();
        let e = g.trivial();
        let x = Element::new(e, t.level(e).parse_label("(1,0)").unwrap());
        let y = Element::new(e, t.level(e).parse_label("(0,1)").unwrap());
        let zero = FiniteIdeal::zero(&t);
        // conj(x)·y = (0,1)·(0,1) is a generalized product of x and y, and it is not 0
        let (holds, witness) = q_predicate(&t, &x, &y, |p| zero.contains(p));
        assert!(!holds);
        assert_eq!(witness.unwrap().product, y);
        assert!(is_prime(&t, &zero).prime);
        assert_eq!(all_ideals(&t).len(), 2);
    }

    #[test]
    fn radical_membership_in_z8() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let t = FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, FiniteRing::zmod(8)));
        let zero = FiniteIdeal::zero(&t);
        let two = Element::new(g.trivial(), 2);
        assert!(nakaoka_radical_membership(&t, &two, &zero, None).is_member());
        let one = Element::new(g.trivial(), 1);
        assert!(matches!(
            nakaoka_radical_membership(&t, &one, &zero, None),
            RadicalMembership::NotMember { .. }
        ));
        for n in 1..=4 {
            let p = closure(&t, std::slice::from_ref(&two));
            assert_eq!(power(&t, &p, n), principal_power_via_generators(&t, &two, n), "n = {n}");
        }
    }

    #[test]
    fn maximal_disjoint_prime_preconditions() {
        let t = fp_z4();
        let e = t.group().trivial();
        assert_eq!(maximal_disjoint_prime(&t, e, &[]), Err(IdealError::EmptySet));
        assert_eq!(maximal_disjoint_prime(&t, e, &[0, 1]), Err(IdealError::ZeroInSet));
        assert!(matches!(maximal_disjoint_prime(&t, e, &[3]), Err(IdealError::NotMultiplicative(_))));
        let p = maximal_disjoint_prime(&t, e, &[1]).unwrap();
        assert!(is_prime(&t, &p).prime);
    }

    #[test]
    fn burnside_principal_ideals() {
        let a = Burnside::new(Arc::new(FiniteGroup::cyclic(2)));
        let g = a.group().clone();
        let (e, top) = (g.trivial(), g.whole());
        let two = Element::new(e, vec![2]);
        let t = Element::new(top, a.orbit(top, e));
        assert!(!burnside_principal_membership(&a, &t, &two).unwrap());
        let two_t = Element::new(top, vec![2, 0]);
        assert!(burnside_principal_membership(&a, &two_t, &two).unwrap());
        assert!(burnside_principal_membership(&a, &two, &two).unwrap());
        assert!(burnside_principal_membership(&a, &Element::new(top, vec![0, 0]), &two).unwrap());
    }

    #[test]
    fn burnside_q_predicate() {
        let a = Burnside::new(Arc::new(FiniteGroup::cyclic(2)));
        let g = a.group().clone();
        let top = g.whole();
        let t = Element::new(top, vec![1, 0]);
        let t_minus_2 = Element::new(top, vec![1, -2]);
        let products = generalized_products(&a, &t_minus_2, &t);
        assert!(products.iter().any(|w| w.product.value == vec![0, 0]));
        // (t − 2)·nm(2) = (t − 2)(t + 2) = 2t − 4 is also a generalized product
        let (holds, witness) = q_predicate(&a, &t_minus_2, &t, |p| a.is_zero(p.level, &p.value));
        assert!(!holds);
        assert_eq!(witness.unwrap().product.value, vec![2, -4]);
    }
}
