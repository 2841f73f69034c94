//! The built-in test corpus of small functors.

use std::sync::Arc;

use crate::burnside::Burnside;
use crate::files::{coordinate_action, frobenius_action};
use crate::functor::{FiniteTambara, FixedPointSource};
use crate::group::FiniteGroup;
use crate::ring::FiniteRing;

fn named(mut t: FiniteTambara, name: &str) -> FiniteTambara {
    t.set_name(name);
    t
}

fn trivial_fp(group: FiniteGroup, ring: FiniteRing, name: &str) -> FiniteTambara {
    let g = Arc::new(group);
    named(FiniteTambara::fixed_point(g.clone(), FixedPointSource::trivial(&g, ring)), name)
}

/// `FP(F₂ × F₂)` with `C₂` swapping the factors.
pub fn fp_swap_c2() -> FiniteTambara {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let ring = FiniteRing::builtin("F2xF2").expect("builtin");
    let action = coordinate_action(&g, &ring, g.trivial()).expect("pairs");
    let source = FixedPointSource::new(&g, ring, action).expect("swap is an action");
    named(FiniteTambara::fixed_point(g, source), "FP(F2xF2, swap, C2)")
}

/// `FP(F₄)` with `C₂` acting by Frobenius.
pub fn fp_f4_frobenius_c2() -> FiniteTambara {
    let g = Arc::new(FiniteGroup::cyclic(2));
    let ring = FiniteRing::f4();
    let action = frobenius_action(&g, &ring).expect("cyclic");
    let source = FixedPointSource::new(&g, ring, action).expect("Frobenius is an action");
    named(FiniteTambara::fixed_point(g, source), "FP(F4, Frobenius, C2)")
}

pub fn fp_z4_c2() -> FiniteTambara {
    trivial_fp(FiniteGroup::cyclic(2), FiniteRing::zmod(4), "FP(Z/4, trivial, C2)")
}

pub fn fp_z4_c3() -> FiniteTambara {
    trivial_fp(FiniteGroup::cyclic(3), FiniteRing::zmod(4), "FP(Z/4, trivial, C3)")
}

pub fn fp_z8_c2() -> FiniteTambara {
    trivial_fp(FiniteGroup::cyclic(2), FiniteRing::zmod(8), "FP(Z/8, trivial, C2)")
}

pub fn fp_f2_c2() -> FiniteTambara {
    trivial_fp(FiniteGroup::cyclic(2), FiniteRing::zmod(2), "FP(F2, trivial, C2)")
}

/// `FP(F₂³)` over `S₃` permuting coordinates, passed through its table form so that it
/// is handled as a table-defined functor.
pub fn s3_tables() -> FiniteTambara {
    let g = Arc::new(FiniteGroup::symmetric3());
    let h = g.subgroups().find(|&h| g.subgroup(h).order() == 2).expect("S3 has involutions");
    let ring = FiniteRing::f2_power(3);
    let action = coordinate_action(&g, &ring, h).expect("triples");
    let source = FixedPointSource::new(&g, ring, action).expect("permutation action");
    let fp = FiniteTambara::fixed_point(g, source);
    let t = FiniteTambara::from_tables(&fp.to_tables()).expect("tables of a valid functor");
    named(t, "S3 tables: F2^3 permuted")
}

/// The six finite functors of the acceptance suite.
pub fn finite_corpus() -> Vec<FiniteTambara> {
    vec![fp_swap_c2(), fp_f4_frobenius_c2(), fp_z4_c2(), fp_z4_c3(), fp_z8_c2(), s3_tables()]
}

/// Burnside functors over `C₂`, `C₃`, `C₄` and `S₃`.
pub fn burnside_corpus() -> Vec<Burnside> {
    ["C2", "C3", "C4", "S3"]
        .iter()
        .map(|n| Burnside::new(Arc::new(FiniteGroup::builtin(n).expect("builtin group"))))
        .collect()
}
