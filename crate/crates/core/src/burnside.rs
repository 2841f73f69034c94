//! The Burnside Tambara functor: `A(G/H)` is the Burnside ring of `H`, realized as
//! isomorphism classes of `G`-sets over `G/H`.
//!
//! Level `H` has the basis `[H/L]`, one per `H`-conjugacy class of subgroups `L ≤ H`
//! (representative: the smallest subgroup id in the class). Every structure map is
//! computed from actual `G`-sets: products by pullback, restriction by pullback along
//! the quotient, transfer by composition, conjugation by composing with `G/H ≅ G/gHg⁻¹`,
//! and norm by the dependent product along the quotient.
//!
//! The norm of a virtual element is obtained from the norms of honest `H`-sets: `nm`
//! is polynomial of degree at most `[K:H]` in the basis coefficients, so it is fixed by
//! its values on `{c ∈ Nʳ : |c| ≤ [K:H]}` and extended by Newton interpolation.

use std::sync::{Arc, OnceLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::functor::TambaraFunctor;
use crate::group::{FiniteGroup, SubgroupId};
use crate::gset::{dependent_product, pullback, GMap, GSet};

/// Basis coefficients of an element of `A(H)`.
pub type BurnsideElem = Vec<i64>;

#[derive(Debug)]
struct Level {
    basis: Vec<SubgroupId>,
    // mult[i][j] = [H/Lᵢ]·[H/Lⱼ]
    mult: Vec<Vec<Vec<i64>>>,
    // |H/Lᵢ|
    sizes: Vec<i64>,
    structure: Vec<GMap>,
}

/// Newton coefficients of one norm map: `nm(c) = Σ_α coeff_α ∏ C(cᵢ, αᵢ)`.
#[derive(Debug)]
struct NormPolynomial {
    terms: Vec<(Vec<usize>, Vec<i64>)>,
}

#[derive(Debug)]
pub struct Burnside {
    group: Arc<FiniteGroup>,
    levels: Vec<Level>,
    // res[k*s+h][i] = res^K_H [K/Lᵢ]
    res: Vec<Option<Vec<Vec<i64>>>>,
    // tr[k*s+h][i] = index of tr^K_H [H/Lᵢ] in the basis of A(K)
    tr: Vec<Option<Vec<usize>>>,
    // conj[g][h][i] = index of conj_g [H/Lᵢ] in the basis of A(gHg⁻¹)
    conj: Vec<Vec<Vec<usize>>>,
    norms: Vec<OnceLock<NormPolynomial>>,
}

impl Burnside {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        let s = group.subgroup_count();
        let levels: Vec<Level> = group.subgroups().map(|h| build_level(&group, h)).collect();
        let mut res = vec![None; s * s];
        let mut tr = vec![None; s * s];
        for k in group.subgroups() {
            for h in group.subgroups_of(k) {
                let q = GMap::quotient(&group, h, k);
                let r = levels[k.0]
                    .structure
                    .iter()
                    .map(|p| {
                        let pb = pullback(p, &q).expect("common target");
                        classify(&group, &levels[h.0].basis, &pb.right, h)
                    })
                    .collect();
                res[k.0 * s + h.0] = Some(r);
                let t = levels[h.0]
                    .structure
                    .iter()
                    .map(|p| {
                        let v = classify(&group, &levels[k.0].basis, &q.after(p), k);
                        single_index(&v)
                    })
                    .collect();
                tr[k.0 * s + h.0] = Some(t);
            }
        }
        let conj = group
            .elements()
            .map(|g| {
                group
                    .subgroups()
                    .map(|h| {
                        let c = GMap::conjugation(&group, g, h);
                        let target = group.conjugate(g, h);
                        levels[h.0]
                            .structure
                            .iter()
                            .map(|p| single_index(&classify(&group, &levels[target.0].basis, &c.after(p), target)))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let norms = (0..s * s).map(|_| OnceLock::new()).collect();
        Burnside { group, levels, res, tr, conj, norms }
    }

    /// Basis subgroups `L` of `A(H)`, so that coordinate `i` counts copies of `H/Lᵢ`.
    pub fn basis(&self, h: SubgroupId) -> &[SubgroupId] {
        &self.levels[h.0].basis
    }

    pub fn rank(&self, h: SubgroupId) -> usize {
        self.levels[h.0].basis.len()
    }

    /// Coordinates of `[H/L]` for any `L ≤ H`.
    pub fn orbit(&self, h: SubgroupId, l: SubgroupId) -> BurnsideElem {
        let rep = self.group.conjugacy_rep_under(h, l);
        let i = self.basis(h).iter().position(|&b| b == rep).expect("L ≤ H");
        unit_vector(self.rank(h), i)
    }

    /// The cardinality functional `[H/L] ↦ |H/L|`, which is `res^H_e`.
    pub fn cardinality(&self, h: SubgroupId, x: &[i64]) -> i64 {
        x.iter().zip(&self.levels[h.0].sizes).map(|(a, b)| a * b).sum()
    }

    pub fn sizes(&self, h: SubgroupId) -> &[i64] {
        &self.levels[h.0].sizes
    }

    /// Name of basis element `i` of `A(H)`: `1` for `[H/H]`, `t` for the free orbit, else `[H/L]`.
    pub fn basis_name(&self, h: SubgroupId, i: usize) -> String {
        let l = self.basis(h)[i];
        if l == h {
            "1".to_string()
        } else if l == self.group.trivial() {
            "t".to_string()
        } else {
            format!("[{}]", self.group.subgroup_label(l))
        }
    }

    /// Parses a basis atom: `1`, `t`, `b<i>`, or `[label]` for `[H/L]`.
    pub fn parse_atom(&self, h: SubgroupId, atom: &str) -> Option<usize> {
        let atom = atom.trim();
        let by_subgroup = |l: SubgroupId| self.basis(h).iter().position(|&b| b == l);
        match atom {
            "1" => by_subgroup(h),
            "t" if h != self.group.trivial() => by_subgroup(self.group.trivial()),
            _ => {
                if let Some(i) = atom.strip_prefix('b').and_then(|i| i.parse::<usize>().ok()) {
                    return (i < self.rank(h)).then_some(i);
                }
                let label = atom.strip_prefix('[')?.strip_suffix(']')?;
                let l = self.group.parse_subgroup(label)?;
                if !self.group.is_subgroup(l, h) {
                    return None;
                }
                by_subgroup(self.group.conjugacy_rep_under(h, l))
            }
        }
    }

    /// `nm^K_H` of an honest `H`-set with coefficient vector `c ≥ 0`, by literal coinduction.
    pub fn norm_of_set(&self, k: SubgroupId, h: SubgroupId, c: &[usize]) -> BurnsideElem {
        let g = &self.group;
        let level = &self.levels[h.0];
        let base = GSet::cosets(g.clone(), h);
        let mut parts: Vec<&GSet> = Vec::new();
        let mut maps: Vec<&GMap> = Vec::new();
        for (i, &n) in c.iter().enumerate() {
            for _ in 0..n {
                parts.push(level.structure[i].source());
                maps.push(&level.structure[i]);
            }
        }
        let p = if parts.is_empty() {
            GMap::from_empty(&base)
        } else {
            let (sum, _) = GSet::sum(&parts);
            let points = maps.iter().flat_map(|m| m.points().iter().copied()).collect();
            GMap::new(sum, base, points).expect("equivariant")
        };
        let q = GMap::quotient(g, h, k);
        let dp = dependent_product(&q, &p).expect("composable");
        classify(g, &self.levels[k.0].basis, &dp.map, k)
    }

    fn norm_polynomial(&self, k: SubgroupId, h: SubgroupId) -> &NormPolynomial {
        let s = self.levels.len();
        self.norms[k.0 * s + h.0].get_or_init(|| {
            let d = self.group.index(h, k);
            let r = self.rank(h);
            let alphas = multi_indices(r, d);
            let values: Vec<Vec<i64>> = alphas.iter().map(|a| self.norm_of_set(k, h, a)).collect();
            let rank_k = self.rank(k);
            let terms = alphas
                .iter()
                .map(|alpha| {
                    let mut coeff = vec![0i64; rank_k];
                    for (beta, value) in alphas.iter().zip(&values) {
                        if beta.iter().zip(alpha).any(|(b, a)| b > a) {
                            continue;
                        }
                        let sign = if (alpha.iter().sum::<usize>() - beta.iter().sum::<usize>()) % 2 == 0 {
                            1
                        } else {
                            -1
                        };
                        let weight: i64 = alpha
                            .iter()
                            .zip(beta)
                            .map(|(&a, &b)| binomial(a as i128, b) as i64)
                            .product();
                        for (c, v) in coeff.iter_mut().zip(value) {
                            *c += sign * weight * v;
                        }
                    }
                    (alpha.clone(), coeff)
                })
                .filter(|(_, c)| c.iter().any(|&x| x != 0))
                .collect();
            NormPolynomial { terms }
        })
    }

    fn check_level(&self, h: SubgroupId, x: &[i64]) {
        debug_assert_eq!(x.len(), self.rank(h), "element of the wrong level");
    }
}

fn build_level(group: &Arc<FiniteGroup>, h: SubgroupId) -> Level {
    let mut basis: Vec<SubgroupId> =
        group.subgroups_of(h).into_iter().map(|l| group.conjugacy_rep_under(h, l)).collect();
    basis.sort();
    basis.dedup();
    let structure: Vec<GMap> = basis.iter().map(|&l| GMap::quotient(group, l, h)).collect();
    let sizes = basis.iter().map(|&l| group.index(l, h) as i64).collect();
    let mult = structure
        .iter()
        .map(|a| {
            structure
                .iter()
                .map(|b| {
                    let pb = pullback(a, b).expect("common target");
                    classify(group, &basis, &a.after(&pb.left), h)
                })
                .collect()
        })
        .collect();
    Level { basis, mult, sizes, structure }
}

/// Coordinates of a `G`-set `E → G/H` in the basis of `A(H)`: each orbit of `E` is
/// `G ×_H (H/S)` where `S` is the stabilizer of any of its points over the coset `H`.
fn classify(group: &FiniteGroup, basis: &[SubgroupId], p: &GMap, h: SubgroupId) -> Vec<i64> {
    let e = p.source();
    let orbits = e.orbits();
    let mut found = vec![false; orbits.len()];
    let mut out = vec![0i64; basis.len()];
    for x in 0..e.len() {
        let o = orbits.orbit_of[x];
        if found[o] || p.apply(x) != 0 {
            continue;
        }
        found[o] = true;
        let rep = group.conjugacy_rep_under(h, e.stabilizer(x));
        let i = basis.iter().position(|&b| b == rep).expect("stabilizer over the base coset lies in H");
        out[i] += 1;
    }
    out
}

fn single_index(v: &[i64]) -> usize {
    debug_assert_eq!(v.iter().sum::<i64>(), 1);
    v.iter().position(|&x| x == 1).expect("a single orbit")
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// All `α ∈ Nʳ` with `|α| ≤ d`, in lexicographic order.
fn multi_indices(r: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(r: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        let used: usize = prefix.iter().sum();
        for a in 0..=d - used {
            prefix.push(a);
            go(r, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(r, d, &mut Vec::new(), &mut out);
    out
}

/// `C(n, k)` for any integer `n`.
fn binomial(n: i128, k: usize) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k as i128 {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

impl TambaraFunctor for Burnside {
    type Elem = BurnsideElem;

    fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    fn zero(&self, h: SubgroupId) -> BurnsideElem {
        vec![0; self.rank(h)]
    }

    fn one(&self, h: SubgroupId) -> BurnsideElem {
        self.orbit(h, h)
    }

    fn add(&self, h: SubgroupId, a: &BurnsideElem, b: &BurnsideElem) -> BurnsideElem {
        self.check_level(h, a);
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    fn neg(&self, _h: SubgroupId, a: &BurnsideElem) -> BurnsideElem {
        a.iter().map(|x| -x).collect()
    }

    fn mul(&self, h: SubgroupId, a: &BurnsideElem, b: &BurnsideElem) -> BurnsideElem {
        self.check_level(h, a);
        let level = &self.levels[h.0];
        let mut out = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate().filter(|(_, &x)| x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, &y)| y != 0) {
                for (o, m) in out.iter_mut().zip(&level.mult[i][j]) {
                    *o += x * y * m;
                }
            }
        }
        out
    }

    fn res(&self, k: SubgroupId, h: SubgroupId, x: &BurnsideElem) -> BurnsideElem {
        self.check_level(k, x);
        let s = self.levels.len();
        let table = self.res[k.0 * s + h.0].as_ref().expect("H ≤ K");
        let mut out = vec![0; self.rank(h)];
        for (&c, image) in x.iter().zip(table) {
            for (o, v) in out.iter_mut().zip(image) {
                *o += c * v;
            }
        }
        out
    }

    fn tr(&self, k: SubgroupId, h: SubgroupId, x: &BurnsideElem) -> BurnsideElem {
        self.check_level(h, x);
        let s = self.levels.len();
        let table = self.tr[k.0 * s + h.0].as_ref().expect("H ≤ K");
        let mut out = vec![0; self.rank(k)];
        for (&c, &i) in x.iter().zip(table) {
            out[i] += c;
        }
        out
    }

    fn nm(&self, k: SubgroupId, h: SubgroupId, x: &BurnsideElem) -> BurnsideElem {
        self.check_level(h, x);
        if k == h {
            return x.clone();
        }
        let poly = self.norm_polynomial(k, h);
        let mut out = vec![0i128; self.rank(k)];
        for (alpha, coeff) in &poly.terms {
            let weight: i128 = x.iter().zip(alpha).map(|(&c, &a)| binomial(c as i128, a)).product();
            for (o, &c) in out.iter_mut().zip(coeff) {
                *o += weight * c as i128;
            }
        }
        out.into_iter().map(|v| i64::try_from(v).expect("norm fits in i64")).collect()
    }

    fn conj(&self, g: usize, h: SubgroupId, x: &BurnsideElem) -> BurnsideElem {
        self.check_level(h, x);
        let target = self.group.conjugate(g, h);
        let mut out = vec![0; self.rank(target)];
        for (&c, &i) in x.iter().zip(&self.conj[g][h.0]) {
            out[i] += c;
        }
        out
    }

    fn contains(&self, h: SubgroupId, x: &BurnsideElem) -> bool {
        x.len() == self.rank(h)
    }

    fn is_zero_ring(&self, _h: SubgroupId) -> bool {
        false
    }

    /// Burnside rings embed in a product of copies of `Z` through marks, so they are reduced.
    fn is_nilpotent(&self, _h: SubgroupId, x: &BurnsideElem) -> bool {
        x.iter().all(|&c| c == 0)
    }

    fn format(&self, h: SubgroupId, x: &BurnsideElem) -> String {
        let mut out = String::new();
        for (i, &c) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            let name = self.basis_name(h, i);
            let term = match (name.as_str(), c) {
                ("1", _) => c.abs().to_string(),
                (_, 1) | (_, -1) => name,
                _ => format!("{}{}", c.abs(), name),
            };
            if out.is_empty() {
                if c < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if c < 0 { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn finite_elements(&self, _h: SubgroupId) -> Option<Vec<BurnsideElem>> {
        None
    }

    /// All vectors with coefficients in `[-3, 3]` if there are at most `budget` of them,
    /// otherwise `budget` random ones from that window together with 0 and 1.
    fn sample_elements(&self, h: SubgroupId, budget: usize, rng: &mut ChaCha8Rng) -> Vec<BurnsideElem> {
        let r = self.rank(h);
        let window = window_elements(r, 3);
        if window.len() <= budget {
            return window;
        }
        let mut out = vec![self.zero(h), self.one(h)];
        while out.len() < budget.max(2) {
            out.push((0..r).map(|_| rng.gen_range(-3..=3)).collect());
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Every vector of length `r` with coefficients in `[-bound, bound]`.
pub fn window_elements(r: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}
