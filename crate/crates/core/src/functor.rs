//! The Tambara functor interface and the levelwise-finite implementation.
//!
//! A Tambara functor is described by one commutative ring per subgroup `H ≤ G`
//! (the value on `G/H`) together with restriction, transfer and norm along every
//! inclusion `H ≤ K`, and conjugations `T(G/H) → T(G/gHg⁻¹)`.
//!
//! Argument order is always `(upper, lower)`: `res(k, h, x)` takes `x ∈ T(G/K)` to
//! `T(G/H)`, while `tr(k, h, x)` and `nm(k, h, x)` take `x ∈ T(G/H)` to `T(G/K)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, OnceLock};

use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError, GroupSpec, SubgroupId};
use crate::ring::{FiniteRing, RingError, RingTables};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FunctorError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("level {level}: {source}")]
    Ring { level: String, source: RingError },
    #[error("no level given for subgroup {0}")]
    MissingLevel(String),
    #[error("{kind} table from {upper} to {lower} is missing")]
    MissingMap { kind: &'static str, upper: String, lower: String },
    #[error("conjugation table for element {element} on {subgroup} is missing")]
    MissingConj { element: usize, subgroup: String },
    #[error("{0} does not name a subgroup")]
    UnknownSubgroup(String),
    #[error("{kind} table from {upper} to {lower} is not an inclusion of subgroups")]
    NotInclusion { kind: String, upper: String, lower: String },
    #[error("unknown structure map kind {0:?}")]
    UnknownKind(String),
    #[error("{what} has the wrong length or an entry out of range")]
    BadTable { what: String },
    #[error("group action is not by ring automorphisms: {0}")]
    NotAutomorphism(String),
    #[error("group action table is not an action: {0}")]
    NotAction(String),
    #[error("not a Tambara ideal: {0}")]
    NotIdeal(String),
    #[error("structure map {0} is not well defined on the quotient")]
    NotWellDefined(String),
}

/// An element `value ∈ T(G/level)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element<E> {
    pub level: SubgroupId,
    pub value: E,
}

impl<E> Element<E> {
    pub fn new(level: SubgroupId, value: E) -> Self {
        Element { level, value }
    }
}

pub trait TambaraFunctor: Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn group(&self) -> &Arc<FiniteGroup>;
    fn zero(&self, h: SubgroupId) -> Self::Elem;
    fn one(&self, h: SubgroupId) -> Self::Elem;
    fn add(&self, h: SubgroupId, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, h: SubgroupId, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, h: SubgroupId, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn res(&self, k: SubgroupId, h: SubgroupId, x: &Self::Elem) -> Self::Elem;
    fn tr(&self, k: SubgroupId, h: SubgroupId, x: &Self::Elem) -> Self::Elem;
    fn nm(&self, k: SubgroupId, h: SubgroupId, x: &Self::Elem) -> Self::Elem;
    fn conj(&self, g: usize, h: SubgroupId, x: &Self::Elem) -> Self::Elem;
    /// Whether `x` is a valid element of `T(G/H)`.
    fn contains(&self, h: SubgroupId, x: &Self::Elem) -> bool;
    fn is_zero_ring(&self, h: SubgroupId) -> bool;
    fn is_nilpotent(&self, h: SubgroupId, x: &Self::Elem) -> bool;
    fn format(&self, h: SubgroupId, x: &Self::Elem) -> String;
    /// Every element of `T(G/H)` when the level is finite.
    fn finite_elements(&self, h: SubgroupId) -> Option<Vec<Self::Elem>>;
    /// Elements used by sampled checks: everything for finite levels, otherwise a
    /// deterministic window of at most `budget` elements.
    fn sample_elements(&self, h: SubgroupId, budget: usize, rng: &mut ChaCha8Rng) -> Vec<Self::Elem>;

    fn sub(&self, h: SubgroupId, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(h, a, &self.neg(h, b))
    }

    fn pow(&self, h: SubgroupId, a: &Self::Elem, n: usize) -> Self::Elem {
        (0..n).fold(self.one(h), |acc, _| self.mul(h, &acc, a))
    }

    /// `n·1`.
    fn integer(&self, h: SubgroupId, n: i64) -> Self::Elem {
        let one = self.one(h);
        let unit = if n < 0 { self.neg(h, &one) } else { one };
        (0..n.unsigned_abs()).fold(self.zero(h), |acc, _| self.add(h, &acc, &unit))
    }

    fn is_zero(&self, h: SubgroupId, a: &Self::Elem) -> bool {
        *a == self.zero(h)
    }

    /// True iff some (equivalently every) level is the zero ring.
    fn is_zero_functor(&self) -> bool {
        self.group().subgroups().any(|h| self.is_zero_ring(h))
    }

    /// All `nm^L_{gKg⁻¹} conj_{g,K} res^H_K(x)`, deduplicated by `(level, value)` and sorted.
    fn translates(&self, h: SubgroupId, x: &Self::Elem) -> Vec<Element<Self::Elem>> {
        compute_translates(self, h, x)
    }
}

pub fn compute_translates<T: TambaraFunctor + ?Sized>(
    t: &T,
    h: SubgroupId,
    x: &T::Elem,
) -> Vec<Element<T::Elem>> {
    let g = t.group();
    let mut out = BTreeSet::new();
    for k in g.subgroups_of(h) {
        let r = t.res(h, k, x);
        let mut seen = BTreeSet::new();
        for elt in g.elements() {
            let kc = g.conjugate(elt, k);
            let c = t.conj(elt, k, &r);
            if !seen.insert((kc, c.clone())) {
                continue;
            }
            for l in g.supergroups_of(kc) {
                out.insert(Element::new(l, t.nm(l, kc, &c)));
            }
        }
    }
    out.into_iter().collect()
}

/// The group action on a finite ring underlying a fixed-point functor; `action[g]` is
/// the automorphism by which `g` acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointSource {
    pub ring: FiniteRing,
    pub action: Vec<Vec<usize>>,
}

impl FixedPointSource {
    pub fn new(
        group: &FiniteGroup,
        ring: FiniteRing,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, FunctorError> {
        if action.len() != group.order() {
            return Err(FunctorError::NotAction(format!(
                "{} rows for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (g, row) in action.iter().enumerate() {
            ring.check_automorphism(row)
                .map_err(|e| FunctorError::NotAutomorphism(format!("element {g}: {e}")))?;
        }
        if action[0].iter().enumerate().any(|(r, &v)| r != v) {
            return Err(FunctorError::NotAction("identity acts nontrivially".to_string()));
        }
        for a in group.elements() {
            for b in group.elements() {
                let ab = group.mul(a, b);
                if let Some(r) = ring.elements().find(|&r| action[a][action[b][r]] != action[ab][r]) {
                    return Err(FunctorError::NotAction(format!(
                        "({a}·{b}) acts differently from {a} after {b} on {}",
                        ring.label(r)
                    )));
                }
            }
        }
        Ok(FixedPointSource { ring, action })
    }

    pub fn trivial(group: &FiniteGroup, ring: FiniteRing) -> Self {
        let action = vec![ring.elements().collect(); group.order()];
        FixedPointSource { ring, action }
    }

    /// `R^H` as sorted element indices of `R`.
    pub fn fixed_members(&self, group: &FiniteGroup, h: SubgroupId) -> Vec<usize> {
        let members = group.subgroup(h).members();
        self.ring.elements().filter(|&r| members.iter().all(|&g| self.action[g][r] == r)).collect()
    }
}

/// A Tambara functor with every level a finite ring and every structure map tabulated.
#[derive(Clone, Debug)]
pub struct FiniteTambara {
    name: String,
    group: Arc<FiniteGroup>,
    levels: Vec<FiniteRing>,
    // indexed by upper * s + lower; `None` unless lower ≤ upper
    res: Vec<Option<Vec<usize>>>,
    tr: Vec<Option<Vec<usize>>>,
    nm: Vec<Option<Vec<usize>>>,
    conj: Vec<Vec<Vec<usize>>>,
    fixed_point: Option<FixedPointData>,
    translate_cache: OnceLock<Vec<Vec<Vec<Element<usize>>>>>,
}

#[derive(Clone, Debug)]
struct FixedPointData {
    source: FixedPointSource,
    // embedding[h][i] = element of R for element i of level h
    embedding: Vec<Vec<usize>>,
}

/// Which structure map a table describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Res,
    Tr,
    Nm,
}

impl MapKind {
    pub fn name(self) -> &'static str {
        match self {
            MapKind::Res => "res",
            MapKind::Tr => "tr",
            MapKind::Nm => "nm",
        }
    }
}

/// File form of a table-defined functor. Subgroups are given by sorted member lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TambaraTables {
    #[serde(default)]
    pub name: Option<String>,
    pub group: GroupSpec,
    pub levels: Vec<LevelTables>,
    pub maps: Vec<MapTable>,
    pub conj: Vec<ConjTable>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelTables {
    pub subgroup: Vec<usize>,
    pub ring: RingTables,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapTable {
    pub kind: MapKind,
    pub upper: Vec<usize>,
    pub lower: Vec<usize>,
    pub table: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjTable {
    pub element: usize,
    pub subgroup: Vec<usize>,
    pub table: Vec<usize>,
}

impl FiniteTambara {
    fn idx(&self, upper: SubgroupId, lower: SubgroupId) -> usize {
        upper.0 * self.levels.len() + lower.0
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn level(&self, h: SubgroupId) -> &FiniteRing {
        &self.levels[h.0]
    }

    pub fn levels(&self) -> &[FiniteRing] {
        &self.levels
    }

    pub fn total_size(&self) -> usize {
        self.levels.iter().map(FiniteRing::size).sum()
    }

    pub fn map_table(&self, kind: MapKind, upper: SubgroupId, lower: SubgroupId) -> &[usize] {
        let i = self.idx(upper, lower);
        let slot = match kind {
            MapKind::Res => &self.res[i],
            MapKind::Tr => &self.tr[i],
            MapKind::Nm => &self.nm[i],
        };
        slot.as_deref().expect("lower is a subgroup of upper")
    }

    pub fn conj_table(&self, g: usize, h: SubgroupId) -> &[usize] {
        &self.conj[g][h.0]
    }

    /// The ring with group action this functor was built from, if it is a fixed-point functor.
    pub fn fixed_point_source(&self) -> Option<&FixedPointSource> {
        self.fixed_point.as_ref().map(|d| &d.source)
    }

    /// For a fixed-point functor, the element of the underlying ring represented by `x ∈ T(G/H)`.
    pub fn underlying(&self, h: SubgroupId, x: usize) -> Option<usize> {
        self.fixed_point.as_ref().map(|d| d.embedding[h.0][x])
    }

    /// `FP(R)` for a ring with `G`-action: level `H` is `R^H`, restriction is inclusion,
    /// transfer and norm are sum and product over coset representatives.
    pub fn fixed_point(group: Arc<FiniteGroup>, source: FixedPointSource) -> Self {
        let ring = &source.ring;
        let s = group.subgroup_count();
        let members: Vec<Vec<usize>> =
            group.subgroups().map(|h| source.fixed_members(&group, h)).collect();
        let levels: Vec<FiniteRing> = group
            .subgroups()
            .map(|h| {
                let name = format!("{}^{}", ring.name(), group.subgroup_label(h));
                ring.subring(name, &members[h.0])
            })
            .collect();
        let index = |h: SubgroupId, r: usize| members[h.0].binary_search(&r).expect("fixed element");
        let mut res = vec![None; s * s];
        let mut tr = vec![None; s * s];
        let mut nm = vec![None; s * s];
        for k in group.subgroups() {
            for h in group.subgroups_of(k) {
                let reps = group.left_coset_reps(k, h);
                let i = k.0 * s + h.0;
                res[i] = Some(members[k.0].iter().map(|&r| index(h, r)).collect());
                let sum = |r: usize| {
                    reps.iter().fold(ring.zero(), |acc, &g| ring.add(acc, source.action[g][r]))
                };
                let prod = |r: usize| {
                    reps.iter().fold(ring.one(), |acc, &g| ring.mul(acc, source.action[g][r]))
                };
                tr[i] = Some(members[h.0].iter().map(|&r| index(k, sum(r))).collect());
                nm[i] = Some(members[h.0].iter().map(|&r| index(k, prod(r))).collect());
            }
        }
        let conj = group
            .elements()
            .map(|g| {
                group
                    .subgroups()
                    .map(|h| {
                        let target = group.conjugate(g, h);
                        members[h.0].iter().map(|&r| index(target, source.action[g][r])).collect()
                    })
                    .collect()
            })
            .collect();
        let name = format!("FP({}, {})", ring.name(), group.name());
        FiniteTambara {
            name,
            group,
            levels,
            res,
            tr,
            nm,
            conj,
            fixed_point: Some(FixedPointData { source, embedding: members }),
            translate_cache: OnceLock::new(),
        }
    }

    /// The zero Tambara functor.
    pub fn zero(group: Arc<FiniteGroup>) -> Self {
        let source = FixedPointSource::trivial(&group, FiniteRing::zero_ring());
        let mut t = Self::fixed_point(group, source);
        t.name = format!("0({})", t.group.name());
        t
    }

    /// Builds from explicit tables. Level rings are validated; the Tambara axioms are not
    /// (use `axioms::check_axioms`). Maps `H → H` default to the identity when omitted.
    pub fn from_tables(tables: &TambaraTables) -> Result<Self, FunctorError> {
        let group = Arc::new(tables.group.build()?);
        let s = group.subgroup_count();
        let lookup = |members: &[usize]| {
            group
                .subgroup_by_members(members)
                .ok_or_else(|| FunctorError::UnknownSubgroup(format!("{members:?}")))
        };
        let mut levels: Vec<Option<FiniteRing>> = vec![None; s];
        for lt in &tables.levels {
            let h = lookup(&lt.subgroup)?;
            let ring = FiniteRing::from_ring_tables(&lt.ring)
                .map_err(|source| FunctorError::Ring { level: group.subgroup_label(h), source })?;
            levels[h.0] = Some(ring);
        }
        let levels: Vec<FiniteRing> = levels
            .into_iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| FunctorError::MissingLevel(group.subgroup_label(SubgroupId(i)))))
            .collect::<Result<_, _>>()?;
        let mut res = vec![None; s * s];
        let mut tr = vec![None; s * s];
        let mut nm = vec![None; s * s];
        for m in &tables.maps {
            let (k, h) = (lookup(&m.upper)?, lookup(&m.lower)?);
            if !group.is_subgroup(h, k) {
                return Err(FunctorError::NotInclusion {
                    kind: m.kind.name().to_string(),
                    upper: group.subgroup_label(k),
                    lower: group.subgroup_label(h),
                });
            }
            let (from, to) = match m.kind {
                MapKind::Res => (k, h),
                MapKind::Tr | MapKind::Nm => (h, k),
            };
            check_table(&m.table, levels[from.0].size(), levels[to.0].size(), || {
                format!("{} {}→{}", m.kind.name(), group.subgroup_label(k), group.subgroup_label(h))
            })?;
            let slot = match m.kind {
                MapKind::Res => &mut res,
                MapKind::Tr => &mut tr,
                MapKind::Nm => &mut nm,
            };
            slot[k.0 * s + h.0] = Some(m.table.clone());
        }
        for h in group.subgroups() {
            for (slot, kind) in [(&mut res, "res"), (&mut tr, "tr"), (&mut nm, "nm")] {
                for k in group.supergroups_of(h) {
                    let i = k.0 * s + h.0;
                    if slot[i].is_none() {
                        if k != h {
                            return Err(FunctorError::MissingMap {
                                kind,
                                upper: group.subgroup_label(k),
                                lower: group.subgroup_label(h),
                            });
                        }
                        slot[i] = Some(levels[h.0].elements().collect());
                    }
                }
            }
        }
        let mut conj: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; s]; group.order()];
        for c in &tables.conj {
            let h = lookup(&c.subgroup)?;
            if c.element >= group.order() {
                return Err(FunctorError::BadTable { what: format!("conj element {}", c.element) });
            }
            let target = group.conjugate(c.element, h);
            check_table(&c.table, levels[h.0].size(), levels[target.0].size(), || {
                format!("conj {} on {}", c.element, group.subgroup_label(h))
            })?;
            conj[c.element][h.0] = Some(c.table.clone());
        }
        let conj = conj
            .into_iter()
            .enumerate()
            .map(|(g, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(h, t)| match t {
                        Some(t) => Ok(t),
                        None if g == 0 => Ok(levels[h].elements().collect()),
                        None => Err(FunctorError::MissingConj {
                            element: g,
                            subgroup: group.subgroup_label(SubgroupId(h)),
                        }),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteTambara {
            name: tables.name.clone().unwrap_or_else(|| format!("T({})", group.name())),
            group,
            levels,
            res,
            tr,
            nm,
            conj,
            fixed_point: None,
            translate_cache: OnceLock::new(),
        })
    }

    pub fn to_tables(&self) -> TambaraTables {
        let g = &self.group;
        let members = |h: SubgroupId| g.subgroup(h).members().to_vec();
        let levels = g
            .subgroups()
            .map(|h| LevelTables { subgroup: members(h), ring: self.level(h).to_ring_tables() })
            .collect();
        let mut maps = Vec::new();
        for k in g.subgroups() {
            for h in g.subgroups_of(k).into_iter().filter(|&h| h != k) {
                for kind in [MapKind::Res, MapKind::Tr, MapKind::Nm] {
                    maps.push(MapTable {
                        kind,
                        upper: members(k),
                        lower: members(h),
                        table: self.map_table(kind, k, h).to_vec(),
                    });
                }
            }
        }
        let conj = g
            .elements()
            .skip(1)
            .flat_map(|e| {
                g.subgroups().map(move |h| ConjTable {
                    element: e,
                    subgroup: members(h),
                    table: self.conj[e][h.0].clone(),
                })
            })
            .collect();
        TambaraTables {
            name: Some(self.name.clone()),
            group: GroupSpec::describe(g),
            levels,
            maps,
            conj,
        }
    }

    /// Mutable access to a single structure-map entry; used to build corrupted functors.
    pub fn corrupt_map(&mut self, kind: MapKind, upper: SubgroupId, lower: SubgroupId, x: usize, value: usize) {
        let i = self.idx(upper, lower);
        let slot = match kind {
            MapKind::Res => &mut self.res[i],
            MapKind::Tr => &mut self.tr[i],
            MapKind::Nm => &mut self.nm[i],
        };
        slot.as_mut().expect("lower ≤ upper")[x] = value;
        self.translate_cache = OnceLock::new();
        self.fixed_point = None;
    }

    pub fn corrupt_conj(&mut self, g: usize, h: SubgroupId, x: usize, value: usize) {
        self.conj[g][h.0][x] = value;
        self.translate_cache = OnceLock::new();
        self.fixed_point = None;
    }

    /// Checks that the sets form a Tambara ideal; the error names the first failed closure.
    pub fn check_ideal(&self, levels: &[FixedBitSet]) -> Result<(), String> {
        let g = &self.group;
        if levels.len() != self.levels.len() {
            return Err(format!("expected {} levels, got {}", self.levels.len(), levels.len()));
        }
        for h in g.subgroups() {
            let ring = self.level(h);
            let set = &levels[h.0];
            if set.len() != ring.size() || !ring.is_ideal(set) {
                return Err(format!("level {} is not a ring ideal", g.subgroup_label(h)));
            }
        }
        for k in g.subgroups() {
            for h in g.subgroups_of(k) {
                for x in levels[k.0].ones() {
                    if !levels[h.0].contains(self.res(k, h, &x)) {
                        return Err(self.closure_failure("res", k, h, x));
                    }
                }
                for x in levels[h.0].ones() {
                    if !levels[k.0].contains(self.tr(k, h, &x)) {
                        return Err(self.closure_failure("tr", k, h, x));
                    }
                    if !levels[k.0].contains(self.nm(k, h, &x)) {
                        return Err(self.closure_failure("nm", k, h, x));
                    }
                }
            }
        }
        for e in g.elements() {
            for h in g.subgroups() {
                let target = g.conjugate(e, h);
                for x in levels[h.0].ones() {
                    if !levels[target.0].contains(self.conj(e, h, &x)) {
                        return Err(format!(
                            "conj_{e} of {}@{} leaves the ideal",
                            self.level(h).label(x),
                            g.subgroup_label(h)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    fn closure_failure(&self, kind: &str, k: SubgroupId, h: SubgroupId, x: usize) -> String {
        let g = &self.group;
        let (lvl, label) = if kind == "res" { (k, self.level(k).label(x)) } else { (h, self.level(h).label(x)) };
        format!(
            "{kind}^{}_{} of {}@{} leaves the ideal",
            g.subgroup_label(k),
            g.subgroup_label(h),
            label,
            g.subgroup_label(lvl)
        )
    }

    /// `T/I` with the induced structure maps.
    pub fn quotient(&self, ideal: &[FixedBitSet]) -> Result<FiniteTambara, FunctorError> {
        self.check_ideal(ideal).map_err(FunctorError::NotIdeal)?;
        let g = &self.group;
        let s = self.levels.len();
        let mut levels = Vec::with_capacity(s);
        let mut proj = Vec::with_capacity(s);
        for h in g.subgroups() {
            let (q, p) = self.level(h).quotient(&ideal[h.0]);
            levels.push(q);
            proj.push(p);
        }
        // representative of each coset: smallest element mapping to it
        let reps: Vec<Vec<usize>> = (0..s)
            .map(|h| {
                let mut r = vec![usize::MAX; levels[h].size()];
                for (x, &c) in proj[h].iter().enumerate() {
                    if r[c] == usize::MAX {
                        r[c] = x;
                    }
                }
                r
            })
            .collect();
        let induce = |table: &[usize], from: usize, to: usize, what: &str| -> Result<Vec<usize>, FunctorError> {
            for (x, &c) in proj[from].iter().enumerate() {
                if proj[to][table[x]] != proj[to][table[reps[from][c]]] {
                    return Err(FunctorError::NotWellDefined(what.to_string()));
                }
            }
            Ok(reps[from].iter().map(|&r| proj[to][table[r]]).collect())
        };
        let mut res = vec![None; s * s];
        let mut tr = vec![None; s * s];
        let mut nm = vec![None; s * s];
        for k in g.subgroups() {
            for h in g.subgroups_of(k) {
                let i = k.0 * s + h.0;
                res[i] = Some(induce(self.map_table(MapKind::Res, k, h), k.0, h.0, "res")?);
                tr[i] = Some(induce(self.map_table(MapKind::Tr, k, h), h.0, k.0, "tr")?);
                nm[i] = Some(induce(self.map_table(MapKind::Nm, k, h), h.0, k.0, "nm")?);
            }
        }
        let mut conj = Vec::with_capacity(g.order());
        for e in g.elements() {
            let mut row = Vec::with_capacity(s);
            for h in g.subgroups() {
                row.push(induce(&self.conj[e][h.0], h.0, g.conjugate(e, h).0, "conj")?);
            }
            conj.push(row);
        }
        Ok(FiniteTambara {
            name: format!("{}/I", self.name),
            group: g.clone(),
            levels,
            res,
            tr,
            nm,
            conj,
            fixed_point: None,
            translate_cache: OnceLock::new(),
        })
    }

    /// All elements as `(level, value)` pairs in level order.
    pub fn all_elements(&self) -> Vec<Element<usize>> {
        self.group
            .subgroups()
            .flat_map(|h| self.level(h).elements().map(move |x| Element::new(h, x)))
            .collect()
    }

    /// The Weyl action on `T(G/e)`, as a ring with `G`-action.
    pub fn underlying_source(&self) -> FixedPointSource {
        let e = self.group.trivial();
        FixedPointSource {
            ring: self.level(e).clone(),
            action: self.group.elements().map(|g| self.conj[g][e.0].clone()).collect(),
        }
    }

    fn translate_table(&self) -> &Vec<Vec<Vec<Element<usize>>>> {
        self.translate_cache.get_or_init(|| {
            self.group
                .subgroups()
                .map(|h| self.level(h).elements().map(|x| compute_translates(self, h, &x)).collect())
                .collect()
        })
    }
}

fn check_table(
    table: &[usize],
    from: usize,
    to: usize,
    what: impl FnOnce() -> String,
) -> Result<(), FunctorError> {
    if table.len() != from || table.iter().any(|&v| v >= to) {
        return Err(FunctorError::BadTable { what: what() });
    }
    Ok(())
}

impl TambaraFunctor for FiniteTambara {
    type Elem = usize;

    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn zero(&self, h: SubgroupId) -> usize {
        self.level(h).zero()
    }

    fn one(&self, h: SubgroupId) -> usize {
        self.level(h).one()
    }

    fn add(&self, h: SubgroupId, a: &usize, b: &usize) -> usize {
        self.level(h).add(*a, *b)
    }

    fn neg(&self, h: SubgroupId, a: &usize) -> usize {
        self.level(h).neg(*a)
    }

    fn mul(&self, h: SubgroupId, a: &usize, b: &usize) -> usize {
        self.level(h).mul(*a, *b)
    }

    fn res(&self, k: SubgroupId, h: SubgroupId, x: &usize) -> usize {
        self.map_table(MapKind::Res, k, h)[*x]
    }

    fn tr(&self, k: SubgroupId, h: SubgroupId, x: &usize) -> usize {
        self.map_table(MapKind::Tr, k, h)[*x]
    }

    fn nm(&self, k: SubgroupId, h: SubgroupId, x: &usize) -> usize {
        self.map_table(MapKind::Nm, k, h)[*x]
    }

    fn conj(&self, g: usize, h: SubgroupId, x: &usize) -> usize {
        self.conj[g][h.0][*x]
    }

    fn contains(&self, h: SubgroupId, x: &usize) -> bool {
        *x < self.level(h).size()
    }

    fn is_zero_ring(&self, h: SubgroupId) -> bool {
        self.level(h).is_zero_ring()
    }

    fn is_nilpotent(&self, h: SubgroupId, x: &usize) -> bool {
        self.level(h).is_nilpotent(*x)
    }

    fn format(&self, h: SubgroupId, x: &usize) -> String {
        self.level(h).label(*x).to_string()
    }

    fn finite_elements(&self, h: SubgroupId) -> Option<Vec<usize>> {
        Some(self.level(h).elements().collect())
    }

    fn sample_elements(&self, h: SubgroupId, budget: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut all: Vec<usize> = self.level(h).elements().collect();
        if all.len() > budget {
            all.shuffle(rng);
            all.truncate(budget);
            all.sort_unstable();
        }
        all
    }

    fn translates(&self, h: SubgroupId, x: &usize) -> Vec<Element<usize>> {
        self.translate_table()[h.0][*x].clone()
    }
}

/// A morphism of levelwise-finite Tambara functors, given by one map per level.
#[derive(Clone, Debug)]
pub struct FiniteMorphism {
    pub components: Vec<Vec<usize>>,
}

/// Lists every failure of ring-map or naturality conditions for `f: source → target`.
pub fn check_morphism(source: &FiniteTambara, target: &FiniteTambara, f: &FiniteMorphism) -> Vec<String> {
    let g = source.group();
    let mut violations = Vec::new();
    let lbl = |h: SubgroupId| g.subgroup_label(h);
    for h in g.subgroups() {
        let (a, b) = (source.level(h), target.level(h));
        let c = &f.components[h.0];
        if c[a.one()] != b.one() {
            violations.push(format!("level {}: 1 is not preserved", lbl(h)));
        }
        for x in a.elements() {
            for y in a.elements() {
                if c[a.add(x, y)] != b.add(c[x], c[y]) || c[a.mul(x, y)] != b.mul(c[x], c[y]) {
                    violations.push(format!("level {}: not a ring map at ({x}, {y})", lbl(h)));
                }
            }
        }
    }
    for k in g.subgroups() {
        for h in g.subgroups_of(k) {
            for x in source.level(k).elements() {
                if f.components[h.0][source.res(k, h, &x)] != target.res(k, h, &f.components[k.0][x]) {
                    violations.push(format!("res^{}_{} not natural at {x}", lbl(k), lbl(h)));
                }
            }
            for x in source.level(h).elements() {
                let fx = f.components[h.0][x];
                if f.components[k.0][source.tr(k, h, &x)] != target.tr(k, h, &fx) {
                    violations.push(format!("tr^{}_{} not natural at {x}", lbl(k), lbl(h)));
                }
                if f.components[k.0][source.nm(k, h, &x)] != target.nm(k, h, &fx) {
                    violations.push(format!("nm^{}_{} not natural at {x}", lbl(k), lbl(h)));
                }
            }
        }
    }
    for e in g.elements() {
        for h in g.subgroups() {
            let t = g.conjugate(e, h);
            for x in source.level(h).elements() {
                if f.components[t.0][source.conj(e, h, &x)] != target.conj(e, h, &f.components[h.0][x]) {
                    violations.push(format!("conj_{e} on {} not natural at {x}", lbl(h)));
                }
            }
        }
    }
    violations
}

/// The unit `T → FP(T(G/e))`, each component `res^H_e`, together with its naturality report.
pub fn unit_to_fixed_points(t: &FiniteTambara) -> (FiniteTambara, FiniteMorphism, Vec<String>) {
    let g = t.group().clone();
    let e = g.trivial();
    let source = t.underlying_source();
    let fp = FiniteTambara::fixed_point(g.clone(), source);
    let mut violations = Vec::new();
    let components = g
        .subgroups()
        .map(|h| {
            t.level(h)
                .elements()
                .map(|x| {
                    let r = t.res(h, e, &x);
                    let fixed = fp.fixed_point.as_ref().expect("fixed point").embedding[h.0].binary_search(&r);
                    fixed.unwrap_or_else(|_| {
                        violations.push(format!(
                            "res to e of {}@{} is not fixed by {}",
                            t.level(h).label(x),
                            g.subgroup_label(h),
                            g.subgroup_label(h)
                        ));
                        0
                    })
                })
                .collect()
        })
        .collect();
    let f = FiniteMorphism { components };
    if violations.is_empty() {
        violations = check_morphism(t, &fp, &f);
    }
    (fp, f, violations)
}

/// Labels of the elements of each level, keyed by subgroup label; for reports.
pub fn describe_levels(t: &FiniteTambara) -> BTreeMap<String, Vec<String>> {
    let g = t.group();
    g.subgroups()
        .map(|h| (g.subgroup_label(h), t.level(h).labels().to_vec()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn fp_swap() -> FiniteTambara {
        let g = c2();
        let ring = FiniteRing::builtin("F2xF2").unwrap();
        let swap = vec![ring.elements().collect(), vec![0, 2, 1, 3]];
        let src = FixedPointSource::new(&g, ring, swap).unwrap();
        FiniteTambara::fixed_point(g, src)
    }

    #[test]
    fn fixed_points_of_swap() {
        let t = fp_swap();
        let g = t.group().clone();
        let (e, top) = (g.trivial(), g.whole());
        assert_eq!(t.level(e).size(), 4);
        assert_eq!(t.level(top).size(), 2);
        assert_eq!(t.level(top).labels(), &["(0,0)".to_string(), "(1,1)".to_string()]);
        let x = t.level(e).parse_label("(0,1)").unwrap();
        assert_eq!(t.nm(top, e, &x), t.zero(top));
        assert_eq!(t.tr(top, e, &x), t.one(top));
        assert_eq!(t.res(top, e, &t.one(top)), t.one(e));
    }

    #[test]
    fn trivial_action_formulas() {
        let g = c2();
        let z4 = FiniteRing::zmod(4);
        let t = FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, z4.clone()));
        let (e, top) = (g.trivial(), g.whole());
        for x in z4.elements() {
            assert_eq!(t.tr(top, e, &x), z4.add(x, x));
            assert_eq!(t.nm(top, e, &x), z4.mul(x, x));
        }
    }

    #[test]
    fn rejects_non_automorphism_action() {
        let g = c2();
        let z4 = FiniteRing::zmod(4);
        let bad = vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]];
        assert!(matches!(
            FixedPointSource::new(&g, z4, bad),
            Err(FunctorError::NotAutomorphism(_))
        ));
    }

    #[test]
    fn tables_round_trip() {
        let t = fp_swap();
        let tables = t.to_tables();
        let json = serde_json::to_string(&tables).unwrap();
        let back: TambaraTables = serde_json::from_str(&json).unwrap();
        let u = FiniteTambara::from_tables(&back).unwrap();
        assert_eq!(u.to_tables(), tables);
    }

    #[test]
    fn quotients() {
        let g = c2();
        let t = FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, FiniteRing::zmod(4)));
        let zero: Vec<FixedBitSet> = t.levels().iter().map(FiniteRing::zero_ideal).collect();
        let same = t.quotient(&zero).unwrap();
        assert_eq!(same.total_size(), t.total_size());
        let full: Vec<FixedBitSet> = t.levels().iter().map(FiniteRing::full_set).collect();
        assert!(t.quotient(&full).unwrap().is_zero_functor());
        let bogus = vec![t.level(g.trivial()).set_of([0, 2]), t.level(g.whole()).zero_ideal()];
        // {0,2} at e with 0 at the top is an ideal (tr 2 = 0, nm 2 = 0)
        assert!(t.quotient(&bogus).is_ok());
        let not_ideal = vec![t.level(g.trivial()).zero_ideal(), t.level(g.whole()).set_of([0, 2])];
        assert!(matches!(t.quotient(&not_ideal), Err(FunctorError::NotIdeal(_))));
    }

    #[test]
    fn unit_of_fixed_point_functor_is_natural() {
        let t = fp_swap();
        let (_, f, violations) = unit_to_fixed_points(&t);
        assert!(violations.is_empty(), "{violations:?}");
        assert_eq!(f.components[0], vec![0, 1, 2, 3]);
        assert!(unit_to_fixed_points(&FiniteTambara::zero(c2())).2.is_empty());
    }

    #[test]
    fn translates_of_zero_are_zero() {
        let t = fp_swap();
        let g = t.group().clone();
        for h in g.subgroups() {
            for el in t.translates(h, &t.zero(h)) {
                assert_eq!(el.value, t.zero(el.level));
            }
        }
    }
}
