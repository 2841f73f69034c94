//! Finite G-sets, equivariant maps, and the limits and adjoints used by bispan
//! composition: pullbacks, dependent products and exponential diagrams.
//!
//! Every G-set is materialized as an action table `action[g][x]`. Orbits are
//! ordered by their smallest point, which is also the canonical base point.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::group::{FiniteGroup, SubgroupId};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GSetError {
    #[error("action table has {0} rows, expected one per group element")]
    ActionRows(usize),
    #[error("action of element {0} is not a permutation of the points")]
    NotPermutation(usize),
    #[error("identity does not act trivially")]
    IdentityActs,
    #[error("action does not respect multiplication at ({0}, {1})")]
    NotAction(usize, usize),
    #[error("G-sets are over different groups")]
    GroupMismatch,
    #[error("point map has length {got}, expected {expected}")]
    MapLength { got: usize, expected: usize },
    #[error("point map sends {0} out of range")]
    MapOutOfRange(usize),
    #[error("map is not equivariant at element {g}, point {x}")]
    NotEquivariant { g: usize, x: usize },
    #[error("maps are not composable")]
    NotComposable,
    #[error("maps do not share a codomain")]
    NoCommonTarget,
    #[error("map is not an isomorphism")]
    NotIsomorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    action: Vec<Vec<usize>>,
}

/// Orbit structure of a G-set.
#[derive(Clone, Debug)]
pub struct Orbits {
    /// Orbit index of each point.
    pub orbit_of: Vec<usize>,
    /// Smallest point of each orbit.
    pub bases: Vec<usize>,
    /// Stabilizer of each base point.
    pub stabilizers: Vec<SubgroupId>,
    /// For each point `x`, the smallest `g` with `g · base = x`.
    pub transporter: Vec<usize>,
}

impl Orbits {
    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn base_of(&self, x: usize) -> usize {
        self.bases[self.orbit_of[x]]
    }
}

/// One orbit: its base point and the stabilizer of that point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub stabilizer: SubgroupId,
    pub base: usize,
}

impl GSet {
    pub fn new(group: Arc<FiniteGroup>, action: Vec<Vec<usize>>) -> Result<Self, GSetError> {
        if action.len() != group.order() {
            return Err(GSetError::ActionRows(action.len()));
        }
        let n = action[0].len();
        for (g, row) in action.iter().enumerate() {
            let mut seen = vec![false; n];
            if row.len() != n || row.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
                return Err(GSetError::NotPermutation(g));
            }
        }
        if action[0].iter().enumerate().any(|(x, &y)| x != y) {
            return Err(GSetError::IdentityActs);
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..n).any(|x| action[g][action[h][x]] != action[gh][x]) {
                    return Err(GSetError::NotAction(g, h));
                }
            }
        }
        Ok(GSet { group, action })
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        let action = vec![Vec::new(); group.order()];
        GSet { group, action }
    }

    /// `n` points with trivial action.
    pub fn trivial(group: Arc<FiniteGroup>, n: usize) -> Self {
        let action = vec![(0..n).collect(); group.order()];
        GSet { group, action }
    }

    /// The orbit `G/H`; points are the left cosets ordered by smallest element,
    /// so point 0 is the coset `H` itself.
    pub fn cosets(group: Arc<FiniteGroup>, h: SubgroupId) -> Self {
        let (point_of, reps) = coset_points(&group, h);
        let action = group
            .elements()
            .map(|g| reps.iter().map(|&x| point_of[group.mul(g, x)]).collect())
            .collect();
        GSet { group, action }
    }

    /// Disjoint union, with the coprojection of each summand.
    pub fn sum(parts: &[&GSet]) -> (GSet, Vec<GMap>) {
        let group = parts.first().map(|p| p.group.clone()).expect("at least one summand");
        let mut action = vec![Vec::new(); group.order()];
        let mut offsets = Vec::with_capacity(parts.len());
        let mut offset = 0;
        for part in parts {
            assert_eq!(part.group, group, "summands must share a group");
            for (g, row) in part.action.iter().enumerate() {
                action[g].extend(row.iter().map(|&y| y + offset));
            }
            offsets.push(offset);
            offset += part.len();
        }
        let total = GSet { group, action };
        let injections = parts
            .iter()
            .zip(offsets)
            .map(|(part, off)| GMap {
                source: (*part).clone(),
                target: total.clone(),
                map: (0..part.len()).map(|x| x + off).collect(),
            })
            .collect();
        (total, injections)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.action[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn action_table(&self) -> &[Vec<usize>] {
        &self.action
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn stabilizer(&self, x: usize) -> SubgroupId {
        let mask = self
            .group
            .elements()
            .filter(|&g| self.act(g, x) == x)
            .fold(0u64, |m, g| m | 1 << g);
        self.group.subgroup_by_mask(mask).expect("stabilizers are subgroups")
    }

    pub fn orbits(&self) -> Orbits {
        let n = self.len();
        let mut orbit_of = vec![usize::MAX; n];
        let mut transporter = vec![0; n];
        let mut bases = Vec::new();
        let mut stabilizers = Vec::new();
        for x in 0..n {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let idx = bases.len();
            bases.push(x);
            stabilizers.push(self.stabilizer(x));
            for g in self.group.elements() {
                let y = self.act(g, x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = idx;
                    transporter[y] = g;
                }
            }
        }
        Orbits { orbit_of, bases, stabilizers, transporter }
    }

    /// One `(stabilizer, base point)` pair per orbit, base point the smallest in its orbit.
    pub fn orbit_decomposition(&self) -> Vec<Orbit> {
        let orbits = self.orbits();
        orbits
            .bases
            .iter()
            .zip(&orbits.stabilizers)
            .map(|(&base, &stabilizer)| Orbit { stabilizer, base })
            .collect()
    }

    /// Sorted stabilizer conjugacy-class representatives, one per orbit: an isomorphism invariant.
    pub fn orbit_type(&self) -> Vec<SubgroupId> {
        let g = &self.group;
        let mut types: Vec<SubgroupId> = self
            .orbit_decomposition()
            .iter()
            .map(|o| g.conjugacy_rep_under(g.whole(), o.stabilizer))
            .collect();
        types.sort();
        types
    }
}

/// Maps each group element to the index of its left coset of `h`, plus the coset representatives.
fn coset_points(group: &FiniteGroup, h: SubgroupId) -> (Vec<usize>, Vec<usize>) {
    let reps = group.left_coset_reps(group.whole(), h);
    let mut point_of = vec![0; group.order()];
    for (i, &r) in reps.iter().enumerate() {
        for &x in group.subgroup(h).members() {
            point_of[group.mul(r, x)] = i;
        }
    }
    (point_of, reps)
}

/// The point of `G/H` containing the element `g`.
pub fn coset_point(group: &FiniteGroup, h: SubgroupId, g: usize) -> usize {
    coset_points(group, h).0[g]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GMap {
    source: GSet,
    target: GSet,
    map: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, map: Vec<usize>) -> Result<Self, GSetError> {
        if source.group != target.group {
            return Err(GSetError::GroupMismatch);
        }
        if map.len() != source.len() {
            return Err(GSetError::MapLength { got: map.len(), expected: source.len() });
        }
        if let Some(x) = map.iter().position(|&y| y >= target.len()) {
            return Err(GSetError::MapOutOfRange(x));
        }
        for g in source.group.elements() {
            for x in 0..source.len() {
                if map[source.act(g, x)] != target.act(g, map[x]) {
                    return Err(GSetError::NotEquivariant { g, x });
                }
            }
        }
        Ok(GMap { source, target, map })
    }

    pub(crate) fn from_raw(source: GSet, target: GSet, map: Vec<usize>) -> Self {
        debug_assert!(GMap::new(source.clone(), target.clone(), map.clone()).is_ok());
        GMap { source, target, map }
    }

    pub fn identity(x: &GSet) -> Self {
        GMap { source: x.clone(), target: x.clone(), map: (0..x.len()).collect() }
    }

    /// The canonical quotient `G/H → G/K`, `xH ↦ xK`, for `H ≤ K`.
    pub fn quotient(group: &Arc<FiniteGroup>, h: SubgroupId, k: SubgroupId) -> Self {
        assert!(group.is_subgroup(h, k), "quotient needs H ≤ K");
        let source = GSet::cosets(group.clone(), h);
        let target = GSet::cosets(group.clone(), k);
        let (point_of_k, _) = coset_points(group, k);
        let reps = group.left_coset_reps(group.whole(), h);
        let map = reps.iter().map(|&x| point_of_k[x]).collect();
        GMap { source, target, map }
    }

    /// The isomorphism `G/H → G/gHg⁻¹`, `xH ↦ xg⁻¹(gHg⁻¹)`.
    pub fn conjugation(group: &Arc<FiniteGroup>, g: usize, h: SubgroupId) -> Self {
        let gh = group.conjugate(g, h);
        let source = GSet::cosets(group.clone(), h);
        let target = GSet::cosets(group.clone(), gh);
        let (point_of, _) = coset_points(group, gh);
        let reps = group.left_coset_reps(group.whole(), h);
        let map = reps.iter().map(|&x| point_of[group.mul(x, group.inv(g))]).collect();
        GMap { source, target, map }
    }

    /// The fold map `X ⊔ X → X`.
    pub fn fold(x: &GSet) -> Self {
        let (sum, _) = GSet::sum(&[x, x]);
        let map = (0..sum.len()).map(|p| p % x.len().max(1)).collect();
        GMap { source: sum, target: x.clone(), map }
    }

    /// The unique map `∅ → X`.
    pub fn from_empty(x: &GSet) -> Self {
        GMap { source: GSet::empty(x.group.clone()), target: x.clone(), map: Vec::new() }
    }

    /// The unique map `X → G/G`.
    pub fn to_point(x: &GSet) -> Self {
        let point = GSet::trivial(x.group.clone(), 1);
        GMap { source: x.clone(), target: point, map: vec![0; x.len()] }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    pub fn points(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.map.len()).filter(|&x| self.map[x] == y).collect()
    }

    /// All fibers, indexed by target point; each fiber sorted.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut fibers = vec![Vec::new(); self.target.len()];
        for (x, &y) in self.map.iter().enumerate() {
            fibers[y].push(x);
        }
        fibers
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GMap) -> Result<GMap, GSetError> {
        if first.target != self.source {
            return Err(GSetError::NotComposable);
        }
        Ok(self.after(first))
    }

    /// `self ∘ first` without checking that the middle objects agree.
    pub(crate) fn after(&self, first: &GMap) -> GMap {
        debug_assert_eq!(first.target.len(), self.source.len());
        GMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        }
    }

    pub fn is_isomorphism(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.source.len() == self.target.len()
            && self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn inverse(&self) -> Result<GMap, GSetError> {
        if !self.is_isomorphism() {
            return Err(GSetError::NotIsomorphism);
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Ok(GMap { source: self.target.clone(), target: self.source.clone(), map: inv })
    }
}

/// Extends a choice of image for each orbit base point to an equivariant map.
/// Returns `None` if some image has a stabilizer not containing the base's stabilizer.
pub fn extend_from_bases(source: &GSet, target: &GSet, images: &[usize]) -> Option<GMap> {
    let orbits = source.orbits();
    let group = source.group();
    for (i, &y) in images.iter().enumerate() {
        if !group.is_subgroup(orbits.stabilizers[i], target.stabilizer(y)) {
            return None;
        }
    }
    let map = (0..source.len())
        .map(|x| target.act(orbits.transporter[x], images[orbits.orbit_of[x]]))
        .collect();
    Some(GMap { source: source.clone(), target: target.clone(), map })
}

/// Every equivariant map `w.source → x.source` with `x ∘ u = w` (maps over a common base).
pub fn maps_over(w: &GMap, x: &GMap) -> Vec<GMap> {
    assert_eq!(w.target, x.target, "maps over must share a base");
    let source = w.source();
    let orbits = source.orbits();
    let group = source.group();
    let candidates: Vec<Vec<usize>> = orbits
        .bases
        .iter()
        .zip(&orbits.stabilizers)
        .map(|(&b, &stab)| {
            (0..x.source.len())
                .filter(|&y| x.apply(y) == w.apply(b))
                .filter(|&y| group.is_subgroup(stab, x.source.stabilizer(y)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for_each_choice(&candidates, |choice| {
        if let Some(u) = extend_from_bases(source, x.source(), choice) {
            out.push(u);
        }
    });
    out
}

/// Every equivariant map `x → y`.
pub fn equivariant_maps(x: &GSet, y: &GSet) -> Vec<GMap> {
    maps_over(&GMap::to_point(x), &GMap::to_point(y))
}

/// Calls `f` on every element of the cartesian product of `options`, in lexicographic order.
pub(crate) fn for_each_choice(options: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    if options.iter().any(|o| o.is_empty()) {
        return;
    }
    let mut idx = vec![0; options.len()];
    let mut choice: Vec<usize> = options.iter().map(|o| o[0]).collect();
    loop {
        f(&choice);
        let mut i = options.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < options[i].len() {
                choice[i] = options[i][idx[i]];
                break;
            }
            idx[i] = 0;
            choice[i] = options[i][0];
        }
    }
}

/// The pullback `X ×_Z Y` of `f: X → Z` and `g: Y → Z`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: GSet,
    /// Projection to the source of `f`.
    pub left: GMap,
    /// Projection to the source of `g`.
    pub right: GMap,
}

/// Points are the pairs `(x, y)` with `f(x) = g(y)`, in lexicographic order, with diagonal action.
pub fn pullback(f: &GMap, g: &GMap) -> Result<Pullback, GSetError> {
    if f.target != g.target {
        return Err(GSetError::NoCommonTarget);
    }
    Ok(pullback_unchecked(f, g))
}

pub(crate) fn pullback_unchecked(f: &GMap, g: &GMap) -> Pullback {
    let group = f.source.group().clone();
    let g_fibers = g.fibers();
    let mut pairs = Vec::new();
    for x in 0..f.source.len() {
        for &y in &g_fibers[f.apply(x)] {
            pairs.push((x, y));
        }
    }
    let index: HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let action = group
        .elements()
        .map(|h| pairs.iter().map(|&(x, y)| index[&(f.source.act(h, x), g.source.act(h, y))]).collect())
        .collect();
    let object = GSet { group, action };
    let left = GMap { source: object.clone(), target: f.source.clone(), map: pairs.iter().map(|p| p.0).collect() };
    let right = GMap { source: object.clone(), target: g.source.clone(), map: pairs.iter().map(|p| p.1).collect() };
    Pullback { object, left, right }
}

/// `Π_f X → Z` for `f: Y → Z` and `g: X → Y`.
#[derive(Clone, Debug)]
pub struct DependentProduct {
    /// The structure map `Π_f g : Π_f X → Z`.
    pub map: GMap,
    /// For each point of `Π_f X`, the section it represents: the chosen point of `X` over each
    /// point of the fiber `f⁻¹(z)`, listed in fiber order.
    pub sections: Vec<Vec<usize>>,
    /// The fibers `f⁻¹(z)`, sorted.
    pub fibers: Vec<Vec<usize>>,
}

/// The fiber of `Π_f X` over `z` is the set of sections `s: f⁻¹(z) → X` of `g`, and `h ∈ G`
/// acts by `(h·s)(y) = h·s(h⁻¹y)`.
pub fn dependent_product(f: &GMap, g: &GMap) -> Result<DependentProduct, GSetError> {
    if g.target != f.source {
        return Err(GSetError::NotComposable);
    }
    Ok(dependent_product_unchecked(f, g))
}

pub(crate) fn dependent_product_unchecked(f: &GMap, g: &GMap) -> DependentProduct {
    let group = f.source.group().clone();
    let z_set = f.target();
    let fibers = f.fibers();
    let g_fibers = g.fibers();
    let mut bases = Vec::new();
    let mut sections: Vec<Vec<usize>> = Vec::new();
    for (z, fiber) in fibers.iter().enumerate() {
        let options: Vec<Vec<usize>> = fiber.iter().map(|&y| g_fibers[y].clone()).collect();
        if fiber.is_empty() {
            bases.push(z);
            sections.push(Vec::new());
            continue;
        }
        for_each_choice(&options, |choice| {
            bases.push(z);
            sections.push(choice.to_vec());
        });
    }
    let index: HashMap<(usize, &[usize]), usize> =
        bases.iter().zip(&sections).enumerate().map(|(i, (&z, s))| ((z, s.as_slice()), i)).collect();
    // position of each y in its fiber
    let mut pos = vec![0; f.source.len()];
    for fiber in &fibers {
        for (i, &y) in fiber.iter().enumerate() {
            pos[y] = i;
        }
    }
    let x_set = g.source();
    let y_set = f.source();
    let mut action = Vec::with_capacity(group.order());
    let mut buf = Vec::new();
    for h in group.elements() {
        let h_inv = group.inv(h);
        let row = bases
            .iter()
            .zip(&sections)
            .map(|(&z, s)| {
                let z2 = z_set.act(h, z);
                buf.clear();
                buf.extend(fibers[z2].iter().map(|&y2| x_set.act(h, s[pos[y_set.act(h_inv, y2)]])));
                index[&(z2, buf.as_slice())]
            })
            .collect();
        action.push(row);
    }
    let object = GSet { group, action };
    let map = GMap { source: object, target: z_set.clone(), map: bases };
    DependentProduct { map, sections, fibers }
}

/// The exponential diagram of `f: Y → Z` and `g: X → Y`:
///
/// ```text
///         ε        f'
///   X <------ P ------> Π
///   |g        |         | Π_f g
///   v         v         v
///   Y ------- Y ------> Z
///                  f
/// ```
///
/// with `P = Y ×_Z Π_f X` and `ε(y, s) = s(y)`.
#[derive(Clone, Debug)]
pub struct ExponentialDiagram {
    pub pi: GMap,
    pub counit: GMap,
    pub projection: GMap,
    pub pulled_back: GMap,
}

pub fn exponential_diagram(f: &GMap, g: &GMap) -> Result<ExponentialDiagram, GSetError> {
    if g.target != f.source {
        return Err(GSetError::NotComposable);
    }
    Ok(exponential_diagram_unchecked(f, g))
}

pub(crate) fn exponential_diagram_unchecked(f: &GMap, g: &GMap) -> ExponentialDiagram {
    let dp = dependent_product_unchecked(f, g);
    let pb = pullback_unchecked(f, &dp.map);
    let mut pos = vec![0; f.source.len()];
    for fiber in &dp.fibers {
        for (i, &y) in fiber.iter().enumerate() {
            pos[y] = i;
        }
    }
    let counit_map = (0..pb.object.len())
        .map(|p| {
            let (y, s) = (pb.left.apply(p), pb.right.apply(p));
            dp.sections[s][pos[y]]
        })
        .collect();
    let counit = GMap { source: pb.object.clone(), target: g.source.clone(), map: counit_map };
    ExponentialDiagram { pi: dp.map, counit, projection: pb.left, pulled_back: pb.right }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn coset_sets() {
        let s3 = Arc::new(FiniteGroup::symmetric3());
        for h in s3.subgroups() {
            let x = GSet::cosets(s3.clone(), h);
            assert_eq!(x.len(), 6 / s3.subgroup(h).order());
            assert!(GSet::new(s3.clone(), x.action_table().to_vec()).is_ok());
            let orbits = x.orbit_decomposition();
            assert_eq!(orbits.len(), 1);
            assert_eq!(orbits[0].stabilizer, h);
        }
        for h in s3.subgroups() {
            for k in s3.supergroups_of(h) {
                let q = GMap::quotient(&s3, h, k);
                assert!(GMap::new(q.source().clone(), q.target().clone(), q.points().to_vec()).is_ok());
                let mut hit = vec![false; q.target().len()];
                q.points().iter().for_each(|&y| hit[y] = true);
                assert!(hit.into_iter().all(|b| b));
            }
            for g in s3.elements() {
                let c = GMap::conjugation(&s3, g, h);
                assert!(GMap::new(c.source().clone(), c.target().clone(), c.points().to_vec()).is_ok());
                assert!(c.is_isomorphism());
            }
        }
    }

    #[test]
    fn orbit_decomposition_examples() {
        let g = c2();
        let x = GSet::new(g.clone(), vec![vec![0, 1, 2], vec![1, 0, 2]]).unwrap();
        let orbits = x.orbit_decomposition();
        assert_eq!(orbits, vec![
            Orbit { stabilizer: g.trivial(), base: 0 },
            Orbit { stabilizer: g.whole(), base: 2 },
        ]);
        let s3 = Arc::new(FiniteGroup::symmetric3());
        let regular = GSet::new(s3.clone(), s3.table().to_vec()).unwrap();
        let orbits = regular.orbit_decomposition();
        assert_eq!(orbits.len(), 1);
        assert_eq!(orbits[0].stabilizer, s3.trivial());
    }

    #[test]
    fn rejects_non_actions() {
        let g = c2();
        assert_eq!(GSet::new(g.clone(), vec![vec![1, 0], vec![1, 0]]), Err(GSetError::IdentityActs));
        let x = GSet::cosets(g.clone(), g.trivial());
        let pt = GSet::trivial(g.clone(), 2);
        assert!(matches!(GMap::new(pt, x, vec![0, 0]), Err(GSetError::NotEquivariant { .. })));
    }

    #[test]
    fn pullback_of_free_orbit_over_point() {
        let g = c2();
        let free = GSet::cosets(g.clone(), g.trivial());
        let q = GMap::to_point(&free);
        let pb = pullback(&q, &q).unwrap();
        assert_eq!(pb.object.len(), 4);
        assert_eq!(pb.object.orbit_type(), vec![g.trivial(), g.trivial()]);

        let id = GMap::identity(&free);
        let diag = pullback(&id, &id).unwrap();
        assert_eq!(diag.object.len(), 2);

        let empty = GMap::from_empty(&free);
        assert!(pullback(&empty, &id).unwrap().object.is_empty());
    }

    #[test]
    fn dependent_product_examples() {
        let g = c2();
        let free = GSet::cosets(g.clone(), g.trivial());
        let f = GMap::to_point(&free);
        let fold = GMap::fold(&free);
        let dp = dependent_product(&f, &fold).unwrap();
        assert_eq!(dp.map.source().len(), 4);
        // two equivariant sections plus one free orbit: 2 + t
        let types = dp.map.source().orbit_type();
        assert_eq!(types, vec![g.trivial(), g.whole(), g.whole()]);

        let id = GMap::identity(&free);
        let dp = dependent_product(&id, &fold).unwrap();
        assert_eq!(dp.map.source().len(), 4);

        // g = id: exactly one section per fiber
        let dp = dependent_product(&f, &id).unwrap();
        assert_eq!(dp.map.source().len(), 1);

        // empty X over nonempty fibers: no sections
        let dp = dependent_product(&f, &GMap::from_empty(&free)).unwrap();
        assert!(dp.map.source().is_empty());
        // empty fiber: exactly one (empty) section
        let empty_y = GMap::from_empty(&GSet::trivial(g.clone(), 1));
        let dp = dependent_product(&empty_y, &GMap::identity(&GSet::empty(g.clone()))).unwrap();
        assert_eq!(dp.map.source().len(), 1);
    }

    #[test]
    fn exponential_diagram_commutes() {
        let g = c2();
        let free = GSet::cosets(g.clone(), g.trivial());
        let f = GMap::to_point(&free);
        let fold = GMap::fold(&free);
        let d = exponential_diagram(&f, &fold).unwrap();
        for p in 0..d.counit.source().len() {
            assert_eq!(fold.apply(d.counit.apply(p)), d.projection.apply(p));
            assert_eq!(f.apply(d.projection.apply(p)), d.pi.apply(d.pulled_back.apply(p)));
        }
        for m in [&d.pi, &d.counit, &d.projection, &d.pulled_back] {
            assert!(GMap::new(m.source().clone(), m.target().clone(), m.points().to_vec()).is_ok());
        }
        let id = GMap::identity(&free);
        let d = exponential_diagram(&id, &id).unwrap();
        assert_eq!(d.pi.source().len(), 2);
        assert_eq!(d.counit.source().len(), 2);
    }

    #[test]
    fn equivariant_map_counts() {
        let g = c2();
        let free = GSet::cosets(g.clone(), g.trivial());
        let pt = GSet::trivial(g.clone(), 1);
        assert_eq!(equivariant_maps(&free, &free).len(), 2);
        assert_eq!(equivariant_maps(&pt, &free).len(), 0);
        assert_eq!(equivariant_maps(&free, &pt).len(), 1);
    }
}
