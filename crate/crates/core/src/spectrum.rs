//! Prime spectra of levelwise-finite Tambara functors, their topology, and kilpotence.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::burnside::Burnside;
use crate::functor::{Element, FiniteTambara, FixedPointSource, TambaraFunctor};
use crate::group::{FiniteGroup, SubgroupId};
use crate::ideal::{self, FiniteIdeal, RadicalMembership};
use crate::lattice::{integer_kernel, Lattice, LatticeError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("the Weyl action on the underlying level is nontrivial: {0}")]
    NontrivialAction(String),
    #[error("the preimage of the nilradical is not an ideal: {0}")]
    NotIdeal(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// All prime ideals, in canonical order.
pub fn enumerate_primes(t: &FiniteTambara) -> Vec<FiniteIdeal> {
    ideal::all_ideals(t).into_par_iter().filter(|i| ideal::is_prime(t, i).prime).collect()
}

/// Intersection of all primes; the whole functor when there are none.
pub fn intersect_all(t: &FiniteTambara, primes: &[FiniteIdeal]) -> FiniteIdeal {
    primes.iter().fold(FiniteIdeal::full(t), |acc, p| ideal::intersection(&acc, p))
}

pub fn nil_via_primes(t: &FiniteTambara) -> FiniteIdeal {
    intersect_all(t, &enumerate_primes(t))
}

/// `∩ {P prime : I ⊆ P}`.
pub fn radical_via_primes(t: &FiniteTambara, primes: &[FiniteIdeal], i: &FiniteIdeal) -> FiniteIdeal {
    let above: Vec<FiniteIdeal> = primes.iter().filter(|p| i.is_subset(p)).cloned().collect();
    intersect_all(t, &above)
}

/// A finite spectrum: points, the closed sets `V(I)`, and the basic opens `D(f)`.
#[derive(Clone, Debug)]
pub struct SpectrumSpace {
    pub points: Vec<FiniteIdeal>,
    /// Distinct closed sets, sorted.
    pub closed: Vec<FixedBitSet>,
    /// Distinct basic opens, each with the smallest element defining it.
    pub basic: Vec<(Element<usize>, FixedBitSet)>,
}

impl SpectrumSpace {
    pub fn new(t: &FiniteTambara) -> Self {
        let points = enumerate_primes(t);
        let ideals = ideal::all_ideals(t);
        Self::from_parts(t, points, &ideals)
    }

    pub fn from_parts(t: &FiniteTambara, points: Vec<FiniteIdeal>, ideals: &[FiniteIdeal]) -> Self {
        let mut closed: Vec<FixedBitSet> = ideals.iter().map(|i| v_closed(&points, i)).collect();
        closed.sort();
        closed.dedup();
        let mut basic: Vec<(Element<usize>, FixedBitSet)> = Vec::new();
        for f in t.all_elements() {
            let d = d_open(&points, &f);
            if !basic.iter().any(|(_, b)| *b == d) {
                basic.push((f, d));
            }
        }
        SpectrumSpace { points, closed, basic }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `P_i ⊆ P_j`.
    pub fn specializes(&self, i: usize, j: usize) -> bool {
        self.points[i].is_subset(&self.points[j])
    }

    /// Cover relations of the inclusion order, as `(smaller, larger)`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let below = |i: usize, j: usize| i != j && self.specializes(i, j);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        edges
    }

    /// A copy with point `index` repeated; the copy lies in exactly the same closed and
    /// open sets, so the result is not T0.
    pub fn with_duplicate(&self, index: usize) -> SpectrumSpace {
        let n = self.len();
        let extend = |s: &FixedBitSet| {
            let mut out = s.clone();
            out.grow(n + 1);
            out.set(n, s.contains(index));
            out
        };
        let mut points = self.points.clone();
        points.push(self.points[index].clone());
        SpectrumSpace {
            points,
            closed: self.closed.iter().map(extend).collect(),
            basic: self.basic.iter().map(|(f, b)| (f.clone(), extend(b))).collect(),
        }
    }

    /// Graphviz rendering of the inclusion order, smaller primes at the top.
    pub fn to_dot(&self, t: &FiniteTambara) -> String {
        let mut out = String::from("digraph spectrum {\n  rankdir=TB;\n  node [shape=box];\n");
        for (i, p) in self.points.iter().enumerate() {
            let label: Vec<String> =
                p.describe(t).into_iter().map(|(h, xs)| format!("{h}: {{{}}}", xs.join(","))).collect();
            let _ = writeln!(out, "  p{i} [label=\"{}\"];", label.join("\\n"));
        }
        for (i, j) in self.hasse_edges() {
            let _ = writeln!(out, "  p{i} -> p{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// `V(I)`: primes containing `I`.
pub fn v_closed(points: &[FiniteIdeal], i: &FiniteIdeal) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(points.len());
    for (n, p) in points.iter().enumerate() {
        set.set(n, i.is_subset(p));
    }
    set
}

/// `D(f)`: primes not containing `f`.
pub fn d_open(points: &[FiniteIdeal], f: &Element<usize>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(points.len());
    for (n, p) in points.iter().enumerate() {
        set.set(n, !p.contains(f));
    }
    set
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub products: Vec<Element<usize>>,
    /// `D(e) ∩ D(f) = ∪ D(z)` pointwise.
    pub holds: bool,
}

/// The generalized products `z` of `e` and `f`, checked against `D(e) ∩ D(f) = ∪ D(z)`.
pub fn d_intersection_decomposition(
    t: &FiniteTambara,
    points: &[FiniteIdeal],
    e: &Element<usize>,
    f: &Element<usize>,
) -> Decomposition {
    let products: Vec<Element<usize>> =
        ideal::generalized_products(t, e, f).into_iter().map(|w| w.product).collect();
    let mut lhs = d_open(points, e);
    lhs.intersect_with(&d_open(points, f));
    let mut rhs = FixedBitSet::with_capacity(points.len());
    for z in &products {
        rhs.union_with(&d_open(points, z));
    }
    Decomposition { products, holds: lhs == rhs }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SpectralReport {
    pub points: usize,
    pub closed_sets_form_topology: bool,
    pub t0: bool,
    pub sober: bool,
    pub quasi_compact_basis: bool,
    /// Finite and T0, which already forces spectrality.
    pub t0_shortcut: bool,
    pub spectral: bool,
    pub violations: Vec<String>,
}

/// Checks T0, soberness and the quasi-compact basis condition directly, and separately
/// records the finite-space shortcut; disagreement between the two routes is a violation.
pub fn check_spectral(space: &SpectrumSpace) -> SpectralReport {
    let n = space.len();
    let mut report = SpectralReport { points: n, ..Default::default() };
    let full = {
        let mut s = FixedBitSet::with_capacity(n);
        s.insert_range(..);
        s
    };
    let empty = FixedBitSet::with_capacity(n);
    let closed = &space.closed;
    let is_closed = |s: &FixedBitSet| closed.binary_search(s).is_ok();

    report.closed_sets_form_topology = true;
    if !is_closed(&full) || !is_closed(&empty) {
        report.closed_sets_form_topology = false;
        report.violations.push("the empty set or the whole space is not closed".into());
    }
    'pairs: for a in closed {
        for b in closed {
            let mut union = a.clone();
            union.union_with(b);
            let mut meet = a.clone();
            meet.intersect_with(b);
            if !is_closed(&union) || !is_closed(&meet) {
                report.closed_sets_form_topology = false;
                report.violations.push("closed sets are not closed under union or intersection".into());
                break 'pairs;
            }
        }
    }

    // closure of a point: intersection of the closed sets containing it
    let point_closure: Vec<FixedBitSet> = (0..n)
        .map(|p| {
            closed.iter().filter(|c| c.contains(p)).fold(full.clone(), |mut acc, c| {
                acc.intersect_with(c);
                acc
            })
        })
        .collect();

    report.t0 = true;
    for p in 0..n {
        for q in p + 1..n {
            if point_closure[p] == point_closure[q] {
                report.t0 = false;
                report.violations.push(format!("points {p} and {q} are topologically indistinguishable"));
            }
        }
    }

    report.sober = true;
    for c in closed.iter().filter(|c| !c.is_clear()) {
        let proper: Vec<&FixedBitSet> = closed.iter().filter(|d| d.is_subset(c) && *d != c).collect();
        let reducible = proper.iter().any(|a| {
            proper.iter().any(|b| {
                let mut u = (*a).clone();
                u.union_with(b);
                u == *c
            })
        });
        if reducible {
            continue;
        }
        let generic: Vec<usize> = c.ones().filter(|&p| point_closure[p] == *c).collect();
        if generic.len() != 1 {
            report.sober = false;
            report.violations.push(format!(
                "irreducible closed set {:?} has {} generic points",
                c.ones().collect::<Vec<_>>(),
                generic.len()
            ));
        }
    }

    // every open of a finite space is quasi-compact; check that basic opens form a basis
    // and that opens are closed under binary intersection
    report.quasi_compact_basis = true;
    let opens: Vec<FixedBitSet> = closed
        .iter()
        .map(|c| {
            let mut o = full.clone();
            o.difference_with(c);
            o
        })
        .collect();
    for (f, b) in &space.basic {
        if !opens.contains(b) {
            report.quasi_compact_basis = false;
            report.violations.push(format!("D({}) is not open", f.value));
        }
    }
    for o in &opens {
        let mut covered = FixedBitSet::with_capacity(n);
        for (_, b) in space.basic.iter().filter(|(_, b)| b.is_subset(o)) {
            covered.union_with(b);
        }
        if covered != *o {
            report.quasi_compact_basis = false;
            report.violations.push(format!("open {:?} is not a union of basic opens", o.ones().collect::<Vec<_>>()));
        }
        for o2 in &opens {
            let mut meet = o.clone();
            meet.intersect_with(o2);
            if !opens.contains(&meet) {
                report.quasi_compact_basis = false;
                report.violations.push("opens are not closed under intersection".into());
            }
        }
    }

    report.t0_shortcut = report.t0;
    report.spectral = report.closed_sets_form_topology && report.t0 && report.sober && report.quasi_compact_basis;
    if report.spectral != report.t0_shortcut {
        report.violations.push("direct check and T0 shortcut disagree".into());
    }
    report
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiCompactReport {
    pub element: Element<usize>,
    pub covers_checked: usize,
    /// Covers whose minimal subcover failed the radical certificate.
    pub failures: Vec<Vec<Element<usize>>>,
}

/// Largest number of distinct basic opens for which every cover is enumerated.
pub const EXHAUSTIVE_COVER_LIMIT: usize = 12;

/// For every cover of `D(f)` by basic opens inside it, extracts a minimal subcover
/// `D(g₁), …, D(gₖ)` and certifies it: `f` must lie in the radical of `⟨g₁, …, gₖ⟩`.
/// Covers are enumerated exhaustively up to [`EXHAUSTIVE_COVER_LIMIT`] candidate opens;
/// beyond that only the cover by all candidates is checked.
pub fn check_basic_open_quasi_compact(
    t: &FiniteTambara,
    space: &SpectrumSpace,
    f: &Element<usize>,
) -> QuasiCompactReport {
    let target = d_open(&space.points, f);
    let candidates: Vec<&(Element<usize>, FixedBitSet)> =
        space.basic.iter().filter(|(_, b)| b.is_subset(&target) && !b.is_clear()).collect();
    let k = candidates.len();
    let families: Vec<u64> = if k <= EXHAUSTIVE_COVER_LIMIT {
        (0..1u64 << k).collect()
    } else {
        vec![u64::MAX >> (64 - k.min(64))]
    };
    let mut certified: HashMap<u64, bool> = HashMap::new();
    let mut report = QuasiCompactReport { element: f.clone(), covers_checked: 0, failures: Vec::new() };
    for family in families {
        let members: Vec<usize> = (0..k).filter(|i| family >> i & 1 == 1).collect();
        let mut union = FixedBitSet::with_capacity(space.len());
        for &i in &members {
            union.union_with(&candidates[i].1);
        }
        if union != target {
            continue;
        }
        report.covers_checked += 1;
        // drop redundant members greedily
        let mut sub = members.clone();
        let mut i = 0;
        while i < sub.len() {
            let mut without = FixedBitSet::with_capacity(space.len());
            for (j, &m) in sub.iter().enumerate() {
                if j != i {
                    without.union_with(&candidates[m].1);
                }
            }
            if without == target {
                sub.remove(i);
            } else {
                i += 1;
            }
        }
        let key = sub.iter().fold(0u64, |acc, &m| acc | 1 << m);
        let ok = *certified.entry(key).or_insert_with(|| {
            let gens: Vec<Element<usize>> = sub.iter().map(|&m| candidates[m].0.clone()).collect();
            let i = ideal::closure(t, &gens);
            matches!(ideal::nakaoka_radical_membership(t, f, &i, None), RadicalMembership::Member { .. })
        });
        if !ok {
            report.failures.push(sub.iter().map(|&m| candidates[m].0.clone()).collect());
        }
    }
    report
}

/// `∏_{g ∈ G} conj_g res^H_e(x)` in `T(G/e)`.
pub fn weyl_product<T: TambaraFunctor + ?Sized>(t: &T, h: SubgroupId, x: &T::Elem) -> T::Elem {
    let g = t.group();
    let e = g.trivial();
    let r = t.res(h, e, x);
    g.elements().fold(t.one(e), |acc, el| t.mul(e, &acc, &t.conj(el, e, &r)))
}

/// The kilpotence criterion: the Weyl product of the underlying element is nilpotent.
pub fn is_kilpotent<T: TambaraFunctor + ?Sized>(t: &T, x: &Element<T::Elem>) -> bool {
    let e = t.group().trivial();
    t.is_nilpotent(e, &weyl_product(t, x.level, &x.value))
}

/// Kilpotent elements of each level. Recorded as a set; it need not be an ideal.
pub fn kil_sets(t: &FiniteTambara) -> Vec<FixedBitSet> {
    t.group()
        .subgroups()
        .map(|h| t.level(h).set_of(t.level(h).elements().filter(|&x| is_kilpotent(t, &Element::new(h, x)))))
        .collect()
}

/// `ker res^H_e` on `A(H)`: the lattice where the cardinality functional vanishes.
pub fn kil_burnside_level(a: &Burnside, h: SubgroupId) -> Result<Lattice, SpectrumError> {
    Ok(integer_kernel(&[a.sizes(h).to_vec()], a.rank(h))?)
}

/// For a trivial Weyl action on `T(G/e)`: the levelwise preimage of the nilradical of
/// `T(G/e)` under `res^H_e`.
pub fn kilradical_trivial_action(t: &FiniteTambara) -> Result<FiniteIdeal, SpectrumError> {
    let g = t.group();
    let e = g.trivial();
    let ring = t.level(e);
    for el in g.elements() {
        if let Some(x) = ring.elements().find(|x| t.conj(el, e, x) != *x) {
            return Err(SpectrumError::NontrivialAction(format!(
                "element {el} moves {}",
                ring.label(x)
            )));
        }
    }
    let nil = ring.nilradical();
    let levels: Vec<FixedBitSet> = g
        .subgroups()
        .map(|h| t.level(h).set_of(t.level(h).elements().filter(|x| nil.contains(t.res(h, e, x)))))
        .collect();
    t.check_ideal(&levels).map_err(SpectrumError::NotIdeal)?;
    Ok(FiniteIdeal::from_levels(levels))
}

/// Whether inverting `x ∈ R^H` kills `FP(R)`, decided by localizing `R` at the
/// multiplicative set generated by `y = ∏_g g·x` and its conjugates.
pub fn localization_oracle_fp(group: &FiniteGroup, source: &FixedPointSource, x: usize) -> bool {
    let ring = &source.ring;
    let y = group.elements().fold(ring.one(), |acc, g| ring.mul(acc, source.action[g][x]));
    let mut gens: Vec<usize> = group.elements().map(|g| source.action[g][y]).collect();
    gens.sort_unstable();
    gens.dedup();
    ring.localization_size(&gens) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::ring::FiniteRing;
    use std::sync::Arc;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn swap() -> FiniteTambara {
        let g = c2();
        let ring = FiniteRing::builtin("F2xF2").unwrap();
        let src = FixedPointSource::new(&g, ring, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]]).unwrap();
        FiniteTambara::fixed_point(g, src)
    }

    #[test]
    fn zero_functor_has_empty_spectrum() {
        let t = FiniteTambara::zero(c2());
        assert!(enumerate_primes(&t).is_empty());
        assert_eq!(nil_via_primes(&t), FiniteIdeal::full(&t));
        let space = SpectrumSpace::new(&t);
        assert!(check_spectral(&space).spectral);
    }

    #[test]
    fn f2_trivial_has_one_point() {
        let g = c2();
        let t = FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, FiniteRing::zmod(2)));
        let primes = enumerate_primes(&t);
        assert_eq!(primes, vec![FiniteIdeal::zero(&t)]);
        let report = check_spectral(&SpectrumSpace::new(&t));
        assert!(report.spectral && report.t0_shortcut, "{report:?}");
    }

    #[test]
    fn swap_spectrum_and_decomposition() {
        let t = swap();
        let space = SpectrumSpace::new(&t);
        assert!(space.points.contains(&FiniteIdeal::zero(&t)));
        assert_eq!(nil_via_primes(&t), ideal::nilradical_levelwise(&t));
        let e = t.group().trivial();
        let a = Element::new(e, 2);
        let b = Element::new(e, 1);
        let dec = d_intersection_decomposition(&t, &space.points, &a, &b);
        assert!(dec.holds);
        assert!(check_spectral(&space).spectral);
        let bad = check_spectral(&space.with_duplicate(0));
        assert!(!bad.t0 && !bad.spectral);
        for f in t.all_elements() {
            assert!(check_basic_open_quasi_compact(&t, &space, &f).failures.is_empty());
        }
    }

    #[test]
    fn kilpotence_of_swap_coordinate() {
        let t = swap();
        let g = t.group().clone();
        let x = Element::new(g.trivial(), 1);
        assert!(is_kilpotent(&t, &x));
        assert!(localization_oracle_fp(&g, t.fixed_point_source().unwrap(), 1));
        assert!(!is_kilpotent(&t, &Element::new(g.whole(), t.one(g.whole()))));
        assert!(matches!(kilradical_trivial_action(&t), Err(SpectrumError::NontrivialAction(_))));
    }

    #[test]
    fn kilradical_of_z4() {
        let g = c2();
        let t = FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, FiniteRing::zmod(4)));
        let kil = kilradical_trivial_action(&t).unwrap();
        assert_eq!(kil.members(g.trivial()), vec![0, 2]);
        assert_eq!(kil.members(g.whole()), vec![0, 2]);
        assert_eq!(kil.levels(), kil_sets(&t).as_slice());
    }

    #[test]
    fn burnside_kernel_of_restriction() {
        for p in [2, 3] {
            let a = Burnside::new(Arc::new(FiniteGroup::cyclic(p)));
            let g = a.group().clone();
            let lattice = kil_burnside_level(&a, g.whole()).unwrap();
            assert_eq!(lattice.rank(), 1);
            let t_minus_p = vec![1, -(p as i64)];
            assert!(lattice.contains(&t_minus_p));
            assert!(is_kilpotent(&a, &Element::new(g.whole(), t_minus_p)));
            assert_eq!(kil_burnside_level(&a, g.trivial()).unwrap().rank(), 0);
        }
    }
}
