//! Morphisms of the polynomial category: bispans `X ← A → B → Y` of finite G-sets,
//! kept in transfer ∘ norm ∘ restriction normal form.
//!
//! Composition is carried out by rewriting the word `T N R T N R` with the pullback
//! and exponential-diagram rules until it is again of the form `T N R`.

use std::collections::HashMap;
use std::fmt;

use petgraph::algo::maximum_matching;
use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::SubgroupId;
use crate::gset::{
    exponential_diagram_unchecked, pullback_unchecked, GMap, GSet, GSetError,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BispanError {
    #[error("legs do not form a bispan X ← A → B → Y")]
    Malformed,
    #[error("target of the first bispan does not match the source of the second")]
    NotComposable,
    #[error(transparent)]
    GSet(#[from] GSetError),
}

/// Which generator a map induces: transfer `T_f`, norm `N_f`, or restriction `R_f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GeneratorKind {
    #[serde(rename = "T")]
    Transfer,
    #[serde(rename = "N")]
    Norm,
    #[serde(rename = "R")]
    Restriction,
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GeneratorKind::Transfer => "T",
            GeneratorKind::Norm => "N",
            GeneratorKind::Restriction => "R",
        })
    }
}

/// `X ←r A →n B →t Y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bispan {
    restriction: GMap,
    norm: GMap,
    transfer: GMap,
}

impl Bispan {
    pub fn new(restriction: GMap, norm: GMap, transfer: GMap) -> Result<Self, BispanError> {
        if restriction.source() != norm.source() || norm.target() != transfer.source() {
            return Err(BispanError::Malformed);
        }
        Ok(Bispan { restriction, norm, transfer })
    }

    pub fn identity(x: &GSet) -> Self {
        let id = GMap::identity(x);
        Bispan { restriction: id.clone(), norm: id.clone(), transfer: id }
    }

    /// `T_f = [X ← X → X → Y]`, `N_f = [X ← X → Y → Y]`, `R_f = [Y ← X → X → X]`.
    pub fn from_generator(kind: GeneratorKind, f: &GMap) -> Self {
        let id_src = GMap::identity(f.source());
        match kind {
            GeneratorKind::Transfer => Bispan {
                restriction: id_src.clone(),
                norm: id_src,
                transfer: f.clone(),
            },
            GeneratorKind::Norm => Bispan {
                restriction: id_src,
                norm: f.clone(),
                transfer: GMap::identity(f.target()),
            },
            GeneratorKind::Restriction => Bispan {
                restriction: f.clone(),
                norm: id_src.clone(),
                transfer: id_src,
            },
        }
    }

    pub fn source(&self) -> &GSet {
        self.restriction.target()
    }

    pub fn target(&self) -> &GSet {
        self.transfer.target()
    }

    pub fn restriction(&self) -> &GMap {
        &self.restriction
    }

    pub fn norm(&self) -> &GMap {
        &self.norm
    }

    pub fn transfer(&self) -> &GMap {
        &self.transfer
    }

    /// The `(R, N, T)` legs; `T_t ∘ N_n ∘ R_r` recomposes to `self`.
    pub fn tnr_factorization(&self) -> (GMap, GMap, GMap) {
        (self.restriction.clone(), self.norm.clone(), self.transfer.clone())
    }

    /// `second ∘ self`.
    pub fn then(&self, second: &Bispan) -> Result<Bispan, BispanError> {
        compose(second, self)
    }

    /// Coarse isomorphism invariant: per-orbit data of `B` with the orbits of `A` over it.
    pub fn invariant_key(&self) -> Vec<(usize, usize, Vec<(usize, usize)>)> {
        let a = self.restriction.source();
        let b = self.norm.target();
        let (ao, bo) = (a.orbits(), b.orbits());
        let xo = self.source().orbits();
        let yo = self.target().orbits();
        let mut per_b: Vec<Vec<(usize, usize)>> = vec![Vec::new(); bo.len()];
        for (j, &base) in ao.bases.iter().enumerate() {
            let size = ao.orbit_of.iter().filter(|&&o| o == j).count();
            let over = bo.orbit_of[self.norm.apply(base)];
            per_b[over].push((size, xo.orbit_of[self.restriction.apply(base)]));
        }
        let mut key: Vec<_> = bo
            .bases
            .iter()
            .enumerate()
            .map(|(i, &base)| {
                let size = bo.orbit_of.iter().filter(|&&o| o == i).count();
                let mut over = std::mem::take(&mut per_b[i]);
                over.sort_unstable();
                (size, yo.orbit_of[self.transfer.apply(base)], over)
            })
            .collect();
        key.sort_unstable();
        key
    }

    /// Isomorphism of bispans: equivariant bijections `A ≅ A'`, `B ≅ B'` commuting with all legs.
    pub fn is_isomorphic(&self, other: &Bispan) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Returns the pair `(α: A → A', β: B → B')` if one exists.
    pub fn find_isomorphism(&self, other: &Bispan) -> Option<(GMap, GMap)> {
        if self.source() != other.source() || self.target() != other.target() {
            return None;
        }
        let (a, a2) = (self.restriction.source(), other.restriction.source());
        let (b, b2) = (self.norm.target(), other.norm.target());
        if a.len() != a2.len() || b.len() != b2.len() {
            return None;
        }
        if self.invariant_key() != other.invariant_key() {
            return None;
        }
        let sig = signatures(self);
        let sig2 = signatures(other);
        let bo = b.orbits();
        let bo2 = b2.orbits();
        let candidates: Vec<Vec<usize>> = bo
            .bases
            .iter()
            .map(|&base| (0..b2.len()).filter(|&y| sig2[y] == sig[base]).collect())
            .collect();
        let mut used = vec![false; bo2.len()];
        let mut choice = vec![0; bo.len()];
        search_b(self, other, &bo, &bo2, &candidates, 0, &mut used, &mut choice)
    }
}

type Signature = (SubgroupId, usize, Vec<(SubgroupId, usize)>);

fn signatures(b: &Bispan) -> Vec<Signature> {
    let a_set = b.restriction.source();
    let b_set = b.norm.target();
    let mut over: Vec<Vec<(SubgroupId, usize)>> = vec![Vec::new(); b_set.len()];
    for x in 0..a_set.len() {
        over[b.norm.apply(x)].push((a_set.stabilizer(x), b.restriction.apply(x)));
    }
    (0..b_set.len())
        .map(|y| {
            let mut fiber = std::mem::take(&mut over[y]);
            fiber.sort_unstable();
            (b_set.stabilizer(y), b.transfer.apply(y), fiber)
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn search_b(
    lhs: &Bispan,
    rhs: &Bispan,
    bo: &crate::gset::Orbits,
    bo2: &crate::gset::Orbits,
    candidates: &[Vec<usize>],
    i: usize,
    used: &mut [bool],
    choice: &mut [usize],
) -> Option<(GMap, GMap)> {
    if i == candidates.len() {
        let b = lhs.norm.target();
        let b2 = rhs.norm.target();
        let beta: Vec<usize> =
            (0..b.len()).map(|y| b2.act(bo.transporter[y], choice[bo.orbit_of[y]])).collect();
        let beta = GMap::from_raw(b.clone(), b2.clone(), beta);
        return match_a(lhs, rhs, &beta).map(|alpha| (alpha, beta));
    }
    for &c in &candidates[i] {
        let orbit = bo2.orbit_of[c];
        if used[orbit] {
            continue;
        }
        used[orbit] = true;
        choice[i] = c;
        if let Some(found) = search_b(lhs, rhs, bo, bo2, candidates, i + 1, used, choice) {
            return Some(found);
        }
        used[orbit] = false;
    }
    None
}

/// Given `β`, finds `α` by bipartite matching of `A`-orbits against `A'`-orbits.
fn match_a(lhs: &Bispan, rhs: &Bispan, beta: &GMap) -> Option<GMap> {
    let a = lhs.restriction.source();
    let a2 = rhs.restriction.source();
    let ao = a.orbits();
    let ao2 = a2.orbits();
    let mut by_key: HashMap<(SubgroupId, usize, usize), Vec<usize>> = HashMap::new();
    for x in 0..a2.len() {
        let key = (a2.stabilizer(x), rhs.restriction.apply(x), rhs.norm.apply(x));
        by_key.entry(key).or_default().push(x);
    }
    let keys: Vec<(SubgroupId, usize, usize)> = ao
        .bases
        .iter()
        .zip(&ao.stabilizers)
        .map(|(&base, &stab)| (stab, lhs.restriction.apply(base), beta.apply(lhs.norm.apply(base))))
        .collect();
    let mut graph: UnGraph<(), ()> = UnGraph::default();
    let left: Vec<NodeIndex> = (0..ao.len()).map(|_| graph.add_node(())).collect();
    let right: Vec<NodeIndex> = (0..ao2.len()).map(|_| graph.add_node(())).collect();
    for (j, key) in keys.iter().enumerate() {
        let points = by_key.get(key)?;
        let mut orbits: Vec<usize> = points.iter().map(|&p| ao2.orbit_of[p]).collect();
        orbits.sort_unstable();
        orbits.dedup();
        for o in orbits {
            graph.add_edge(left[j], right[o], ());
        }
    }
    let matching = maximum_matching(&graph);
    if !matching.is_perfect() {
        return None;
    }
    let images: Vec<usize> = (0..ao.len())
        .map(|j| {
            let mate = matching.mate(left[j]).expect("perfect matching").index() - ao.len();
            by_key[&keys[j]].iter().copied().find(|&p| ao2.orbit_of[p] == mate).expect("edge exists")
        })
        .collect();
    let alpha: Vec<usize> =
        (0..a.len()).map(|x| a2.act(ao.transporter[x], images[ao.orbit_of[x]])).collect();
    Some(GMap::from_raw(a.clone(), a2.clone(), alpha))
}

/// `second ∘ first`, returned in normal form.
///
/// With `first = [X ← A → B → Y]` and `second = [Y ← C → D → Z]` the word
/// `T_{t₂} N_{n₂} R_{r₂} T_{t₁} N_{n₁} R_{r₁}` is rewritten as
///
/// 1. `R_{r₂} T_{t₁} ⇝ T R` through the pullback `P₁ = B ×_Y C`;
/// 2. `N_{n₂} T ⇝ T N R_ε` through the exponential diagram over `D`;
/// 3. `R N_{n₁} ⇝ N R` through `Q₁ = A ×_B P₁`;
/// 4. `R_ε N ⇝ N R` through `Q₂ = Q₁ ×_{P₁} P₂`;
/// 5. fuse adjacent generators of the same kind.
pub fn compose(second: &Bispan, first: &Bispan) -> Result<Bispan, BispanError> {
    Ok(compose_traced(second, first)?.0)
}

/// As [`compose`], also returning one line per rewrite step.
pub fn compose_traced(
    second: &Bispan,
    first: &Bispan,
) -> Result<(Bispan, Vec<String>), BispanError> {
    if first.target() != second.source() {
        return Err(BispanError::NotComposable);
    }
    let mut trace = Vec::new();
    let p1 = pullback_unchecked(&first.transfer, &second.restriction);
    trace.push(format!("R∘T ⇝ T∘R via pullback B×_Y C ({} points)", p1.object.len()));
    let exp = exponential_diagram_unchecked(&second.norm, &p1.right);
    trace.push(format!(
        "N∘T ⇝ T∘N∘R via exponential diagram (Π has {} points, P has {})",
        exp.pi.source().len(),
        exp.counit.source().len()
    ));
    let q1 = pullback_unchecked(&first.norm, &p1.left);
    trace.push(format!("R∘N ⇝ N∘R via pullback A×_B P₁ ({} points)", q1.object.len()));
    let q2 = pullback_unchecked(&q1.right, &exp.counit);
    trace.push(format!("R∘N ⇝ N∘R via pullback Q₁×_{{P₁}} P₂ ({} points)", q2.object.len()));
    let restriction = first.restriction.after(&q1.left.after(&q2.left));
    let norm = exp.pulled_back.after(&q2.right);
    let transfer = second.transfer.after(&exp.pi);
    trace.push("T∘T, N∘N, R∘R∘R fused".to_string());
    Ok((Bispan { restriction, norm, transfer }, trace))
}

/// The pairing `Z → X ⊔ Y` of bispans `Z → X` and `Z → Y`, with the coprojections of `X ⊔ Y`.
pub fn pair(left: &Bispan, right: &Bispan) -> Result<(Bispan, GMap, GMap), BispanError> {
    if left.source() != right.source() {
        return Err(BispanError::NotComposable);
    }
    let (a, _) = GSet::sum(&[left.restriction.source(), right.restriction.source()]);
    let (b, b_inj) = GSet::sum(&[left.norm.target(), right.norm.target()]);
    let (y, y_inj) = GSet::sum(&[left.target(), right.target()]);
    let split = left.restriction.source().len();
    let split_b = left.norm.target().len();
    let r = (0..a.len())
        .map(|p| if p < split { left.restriction.apply(p) } else { right.restriction.apply(p - split) })
        .collect();
    let n = (0..a.len())
        .map(|p| {
            if p < split {
                b_inj[0].apply(left.norm.apply(p))
            } else {
                b_inj[1].apply(right.norm.apply(p - split))
            }
        })
        .collect();
    let t = (0..b.len())
        .map(|p| {
            if p < split_b {
                y_inj[0].apply(left.transfer.apply(p))
            } else {
                y_inj[1].apply(right.transfer.apply(p - split_b))
            }
        })
        .collect();
    let restriction = GMap::new(a.clone(), left.source().clone(), r)?;
    let norm = GMap::new(a, b.clone(), n)?;
    let transfer = GMap::new(b, y, t)?;
    let mut inj = y_inj.into_iter();
    let (i0, i1) = (inj.next().expect("two summands"), inj.next().expect("two summands"));
    Ok((Bispan { restriction, norm, transfer }, i0, i1))
}

/// The component of a bispan into a coproduct selected by a coprojection `ι: X → X ⊔ Y`,
/// i.e. `R_ι ∘ b`.
pub fn project(b: &Bispan, inclusion: &GMap) -> Result<Bispan, BispanError> {
    compose(&Bispan::from_generator(GeneratorKind::Restriction, inclusion), b)
}
