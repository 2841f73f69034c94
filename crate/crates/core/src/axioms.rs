//! Checks the Tambara functor identities on a functor, exhaustively for finite levels
//! and on a bounded sample for integer levels.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bispan::{compose, Bispan, GeneratorKind};
use crate::evaluate::evaluate_bispan;
use crate::functor::TambaraFunctor;
use crate::group::{FiniteGroup, SubgroupId};
use crate::gset::{GMap, GSet};

/// Default number of sampled elements per level for integer levels.
pub const DEFAULT_BUDGET: usize = 64;

/// Triple identities use at most this many elements per level.
const TRIPLE_LIMIT: usize = 24;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomCheck {
    pub identity: &'static str,
    pub cases: usize,
    pub witness: Option<String>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn failed(&self, identity: &str) -> bool {
        self.failures().any(|c| c.identity == identity)
    }
}

struct Check {
    identity: &'static str,
    cases: usize,
    witness: Option<String>,
}

impl Check {
    fn new(identity: &'static str) -> Self {
        Check { identity, cases: 0, witness: None }
    }

    /// Records one case; keeps the first failure.
    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn done(self) -> AxiomCheck {
        AxiomCheck { identity: self.identity, cases: self.cases, witness: self.witness }
    }
}

pub fn check_axioms<T: TambaraFunctor>(t: &T, budget: usize, seed: u64) -> AxiomReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = t.group().clone();
    let samples: Vec<Vec<T::Elem>> = g.subgroups().map(|h| t.sample_elements(h, budget, &mut rng)).collect();
    let ctx = Ctx { t, g: &g, samples: &samples };
    let checks = vec![
        ctx.ring_axioms(),
        ctx.res_ring_hom(),
        ctx.conj_ring_hom(),
        ctx.conj_action(),
        ctx.tr_additive(),
        ctx.nm_multiplicative(),
        ctx.transitivity(),
        ctx.conj_naturality(),
        ctx.double_coset_tr(),
        ctx.double_coset_nm(),
        ctx.frobenius(),
        ctx.reciprocity(),
        ctx.reciprocity_index_two(),
    ];
    AxiomReport { checks }
}

struct Ctx<'a, T: TambaraFunctor> {
    t: &'a T,
    g: &'a Arc<FiniteGroup>,
    samples: &'a [Vec<T::Elem>],
}

impl<T: TambaraFunctor> Ctx<'_, T> {
    fn at(&self, h: SubgroupId, x: &T::Elem) -> String {
        format!("{}@{}", self.t.format(h, x), self.g.subgroup_label(h))
    }

    fn lbl(&self, h: SubgroupId) -> String {
        self.g.subgroup_label(h)
    }

    /// Pairs `H ≤ K`, `H ≠ K`.
    fn proper_pairs(&self) -> Vec<(SubgroupId, SubgroupId)> {
        self.g
            .subgroups()
            .flat_map(|k| self.g.subgroups_of(k).into_iter().filter(move |&h| h != k).map(move |h| (k, h)))
            .collect()
    }

    fn ring_axioms(&self) -> AxiomCheck {
        let t = self.t;
        let mut c = Check::new("ring-axioms");
        for h in self.g.subgroups() {
            let xs = &self.samples[h.0];
            let small = &xs[..xs.len().min(TRIPLE_LIMIT)];
            let one = t.one(h);
            for x in xs {
                c.case(t.mul(h, &one, x) == *x, || format!("1·{} ≠ itself", self.at(h, x)));
                c.case(t.is_zero(h, &t.add(h, x, &t.neg(h, x))), || format!("{} - itself ≠ 0", self.at(h, x)));
            }
            for x in small {
                for y in small {
                    c.case(t.mul(h, x, y) == t.mul(h, y, x), || {
                        format!("xy ≠ yx for x={}, y={}", self.at(h, x), self.at(h, y))
                    });
                    for z in small {
                        c.case(
                            t.mul(h, &t.mul(h, x, y), z) == t.mul(h, x, &t.mul(h, y, z))
                                && t.mul(h, x, &t.add(h, y, z)) == t.add(h, &t.mul(h, x, y), &t.mul(h, x, z)),
                            || format!("associativity/distributivity at {}, {}, {}", self.at(h, x), self.at(h, y), self.at(h, z)),
                        );
                    }
                }
            }
        }
        c.done()
    }

    fn res_ring_hom(&self) -> AxiomCheck {
        let t = self.t;
        let mut c = Check::new("res-ring-hom");
        for (k, h) in self.proper_pairs() {
            c.case(t.res(k, h, &t.one(k)) == t.one(h), || format!("res^{}_{}(1) ≠ 1", self.lbl(k), self.lbl(h)));
            for x in &self.samples[k.0] {
                for y in &self.samples[k.0] {
                    let (rx, ry) = (t.res(k, h, x), t.res(k, h, y));
                    c.case(
                        t.res(k, h, &t.add(k, x, y)) == t.add(h, &rx, &ry)
                            && t.res(k, h, &t.mul(k, x, y)) == t.mul(h, &rx, &ry),
                        || format!("res^{}_{} at x={}, y={}", self.lbl(k), self.lbl(h), self.at(k, x), self.at(k, y)),
                    );
                }
            }
        }
        c.done()
    }

    fn conj_ring_hom(&self) -> AxiomCheck {
        let t = self.t;
        let mut c = Check::new("conj-ring-hom");
        for e in self.g.elements() {
            for h in self.g.subgroups() {
                let gh = self.g.conjugate(e, h);
                c.case(t.conj(e, h, &t.one(h)) == t.one(gh), || format!("conj_{e}(1@{}) ≠ 1", self.lbl(h)));
                for x in &self.samples[h.0] {
                    for y in &self.samples[h.0] {
                        let (cx, cy) = (t.conj(e, h, x), t.conj(e, h, y));
                        c.case(
                            t.conj(e, h, &t.add(h, x, y)) == t.add(gh, &cx, &cy)
                                && t.conj(e, h, &t.mul(h, x, y)) == t.mul(gh, &cx, &cy),
                            || format!("conj_{e} at x={}, y={}", self.at(h, x), self.at(h, y)),
                        );
                    }
                }
            }
        }
        c.done()
    }

    fn conj_action(&self) -> AxiomCheck {
        let t = self.t;
        let g = self.g;
        let mut c = Check::new("conj-action");
        for h in g.subgroups() {
            for x in &self.samples[h.0] {
                for &m in g.subgroup(h).members() {
                    c.case(t.conj(m, h, x) == *x, || {
                        format!("conj_{m} is not the identity on {} although {m} ∈ {}", self.at(h, x), self.lbl(h))
                    });
                }
                for a in g.elements() {
                    for b in g.elements() {
                        let lhs = t.conj(a, g.conjugate(b, h), &t.conj(b, h, x));
                        c.case(lhs == t.conj(g.mul(a, b), h, x), || {
                            format!("conj_{a} conj_{b} ≠ conj_({a}·{b}) on {}", self.at(h, x))
                        });
                    }
                }
            }
        }
        c.done()
    }

    fn tr_additive(&self) -> AxiomCheck {
        let t = self.t;
        let mut c = Check::new("tr-additive");
        for (k, h) in self.proper_pairs() {
            c.case(t.is_zero(k, &t.tr(k, h, &t.zero(h))), || format!("tr^{}_{}(0) ≠ 0", self.lbl(k), self.lbl(h)));
            for x in &self.samples[h.0] {
                for y in &self.samples[h.0] {
                    c.case(
                        t.tr(k, h, &t.add(h, x, y)) == t.add(k, &t.tr(k, h, x), &t.tr(k, h, y)),
                        || format!("tr^{}_{} at x={}, y={}", self.lbl(k), self.lbl(h), self.at(h, x), self.at(h, y)),
                    );
                }
            }
        }
        c.done()
    }

    fn nm_multiplicative(&self) -> AxiomCheck {
        let t = self.t;
        let mut c = Check::new("nm-multiplicative");
        for (k, h) in self.proper_pairs() {
            c.case(t.nm(k, h, &t.one(h)) == t.one(k), || format!("nm^{}_{}(1) ≠ 1", self.lbl(k), self.lbl(h)));
            c.case(t.is_zero(k, &t.nm(k, h, &t.zero(h))), || format!("nm^{}_{}(0) ≠ 0", self.lbl(k), self.lbl(h)));
            for x in &self.samples[h.0] {
                for y in &self.samples[h.0] {
                    c.case(
                        t.nm(k, h, &t.mul(h, x, y)) == t.mul(k, &t.nm(k, h, x), &t.nm(k, h, y)),
                        || format!("nm^{}_{} at x={}, y={}", self.lbl(k), self.lbl(h), self.at(h, x), self.at(h, y)),
                    );
                }
            }
        }
        c.done()
    }

    fn transitivity(&self) -> AxiomCheck {
        let t = self.t;
        let g = self.g;
        let mut c = Check::new("transitivity");
        for l in g.subgroups() {
            for x in &self.samples[l.0] {
                c.case(
                    t.res(l, l, x) == *x && t.tr(l, l, x) == *x && t.nm(l, l, x) == *x,
                    || format!("structure maps {0}→{0} are not the identity at {1}", self.lbl(l), self.at(l, x)),
                );
            }
            for k in g.subgroups_of(l) {
                for h in g.subgroups_of(k) {
                    for x in &self.samples[l.0] {
                        c.case(t.res(k, h, &t.res(l, k, x)) == t.res(l, h, x), || {
                            format!("res {}→{}→{} at {}", self.lbl(l), self.lbl(k), self.lbl(h), self.at(l, x))
                        });
                    }
                    for x in &self.samples[h.0] {
                        c.case(
                            t.tr(l, k, &t.tr(k, h, x)) == t.tr(l, h, x)
                                && t.nm(l, k, &t.nm(k, h, x)) == t.nm(l, h, x),
                            || format!("tr/nm {}→{}→{} at {}", self.lbl(h), self.lbl(k), self.lbl(l), self.at(h, x)),
                        );
                    }
                }
            }
        }
        c.done()
    }

    fn conj_naturality(&self) -> AxiomCheck {
        let t = self.t;
        let g = self.g;
        let mut c = Check::new("conj-naturality");
        for (k, h) in self.proper_pairs() {
            for e in g.elements() {
                let (gk, gh) = (g.conjugate(e, k), g.conjugate(e, h));
                for x in &self.samples[k.0] {
                    c.case(t.conj(e, h, &t.res(k, h, x)) == t.res(gk, gh, &t.conj(e, k, x)), || {
                        format!("conj_{e} res^{}_{} at {}", self.lbl(k), self.lbl(h), self.at(k, x))
                    });
                }
                for x in &self.samples[h.0] {
                    let cx = t.conj(e, h, x);
                    c.case(
                        t.conj(e, k, &t.tr(k, h, x)) == t.tr(gk, gh, &cx)
                            && t.conj(e, k, &t.nm(k, h, x)) == t.nm(gk, gh, &cx),
                        || format!("conj_{e} tr/nm^{}_{} at {}", self.lbl(k), self.lbl(h), self.at(h, x)),
                    );
                }
            }
        }
        c.done()
    }

    /// `res^K_L tr^K_H(x) = Σ_γ tr^L_{L∩γHγ⁻¹} res^{γHγ⁻¹}_{L∩γHγ⁻¹} conj_γ(x)` over `γ ∈ L\K/H`,
    /// and its multiplicative analogue for `nm`.
    fn double_coset(&self, identity: &'static str, norm: bool) -> AxiomCheck {
        let t = self.t;
        let g = self.g;
        let mut c = Check::new(identity);
        for k in g.subgroups() {
            let below = g.subgroups_of(k);
            for &h in &below {
                for &l in &below {
                    let reps = g.double_coset_reps_within(k, l, h);
                    for x in &self.samples[h.0] {
                        let lhs = if norm { t.res(k, l, &t.nm(k, h, x)) } else { t.res(k, l, &t.tr(k, h, x)) };
                        let mut rhs = if norm { t.one(l) } else { t.zero(l) };
                        for &gamma in &reps {
                            let gh = g.conjugate(gamma, h);
                            let meet = g.intersect(l, gh);
                            let v = t.res(gh, meet, &t.conj(gamma, h, x));
                            rhs = if norm {
                                t.mul(l, &rhs, &t.nm(l, meet, &v))
                            } else {
                                t.add(l, &rhs, &t.tr(l, meet, &v))
                            };
                        }
                        c.case(lhs == rhs, || {
                            format!(
                                "res^{k}_{l} {op}^{k}_{h}({x}): {lhs} vs {rhs}",
                                k = self.lbl(k),
                                l = self.lbl(l),
                                h = self.lbl(h),
                                op = if norm { "nm" } else { "tr" },
                                x = self.at(h, x),
                                lhs = t.format(l, &lhs),
                                rhs = t.format(l, &rhs)
                            )
                        });
                    }
                }
            }
        }
        c.done()
    }

    fn double_coset_tr(&self) -> AxiomCheck {
        self.double_coset("double-coset-res-tr", false)
    }

    fn double_coset_nm(&self) -> AxiomCheck {
        self.double_coset("double-coset-res-nm", true)
    }

    fn frobenius(&self) -> AxiomCheck {
        let t = self.t;
        let mut c = Check::new("frobenius");
        for (k, h) in self.proper_pairs() {
            for a in &self.samples[k.0] {
                for b in &self.samples[h.0] {
                    let lhs = t.mul(k, a, &t.tr(k, h, b));
                    let rhs = t.tr(k, h, &t.mul(h, &t.res(k, h, a), b));
                    c.case(lhs == rhs, || {
                        format!("a·tr(b) ≠ tr(res(a)·b) for a={}, b={}", self.at(k, a), self.at(h, b))
                    });
                }
            }
        }
        c.done()
    }

    /// `nm^K_H(a + b)` against the evaluation of the normal form of `N_q ∘ T_∇`, where
    /// `∇: G/H ⊔ G/H → G/H` is the fold map and `q: G/H → G/K`.
    fn reciprocity(&self) -> AxiomCheck {
        let t = self.t;
        let g = self.g;
        let mut c = Check::new("tambara-reciprocity");
        for (k, h) in self.proper_pairs() {
            let orbit = GSet::cosets(g.clone(), h);
            let fold = GMap::fold(&orbit);
            let q = GMap::quotient(g, h, k);
            let expansion = compose(
                &Bispan::from_generator(GeneratorKind::Norm, &q),
                &Bispan::from_generator(GeneratorKind::Transfer, &fold),
            )
            .expect("composable");
            let xs = &self.samples[h.0];
            let small = &xs[..xs.len().min(TRIPLE_LIMIT)];
            for a in small {
                for b in small {
                    let direct = t.nm(k, h, &t.add(h, a, b));
                    let via = evaluate_bispan(t, &expansion, &[a.clone(), b.clone()]).expect("levels match");
                    c.case(via == [direct.clone()], || {
                        format!(
                            "nm^{}_{}(a+b) for a={}, b={}: {} directly, {} by the exponential diagram",
                            self.lbl(k),
                            self.lbl(h),
                            self.at(h, a),
                            self.at(h, b),
                            t.format(k, &direct),
                            t.format(k, &via[0])
                        )
                    });
                }
            }
        }
        c.done()
    }

    /// For `[K:H] = 2`: `nm(a + b) = nm(a) + nm(b) + tr(a·conj_γ(b))` with `γ ∈ K \ H`.
    fn reciprocity_index_two(&self) -> AxiomCheck {
        let t = self.t;
        let g = self.g;
        let mut c = Check::new("tambara-reciprocity-index-2");
        for (k, h) in self.proper_pairs().into_iter().filter(|&(k, h)| g.index(h, k) == 2) {
            let gamma = *g.subgroup(k).members().iter().find(|&&m| !g.subgroup(h).contains(m)).expect("index 2");
            for a in &self.samples[h.0] {
                for b in &self.samples[h.0] {
                    let lhs = t.nm(k, h, &t.add(h, a, b));
                    let cross = t.tr(k, h, &t.mul(h, a, &t.conj(gamma, h, b)));
                    let rhs = t.add(k, &t.add(k, &t.nm(k, h, a), &t.nm(k, h, b)), &cross);
                    c.case(lhs == rhs, || {
                        format!("nm(a+b) ≠ nm a + nm b + tr(a·conj b) for a={}, b={}", self.at(h, a), self.at(h, b))
                    });
                }
            }
        }
        c.done()
    }
}
