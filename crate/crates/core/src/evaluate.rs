//! Evaluation of bispans in a Tambara functor.
//!
//! A value on a `G`-set `X` is stored as one element per orbit, taken at the orbit's
//! base point `x₀` (its smallest point) in the level `T(G/Stab x₀)`. The value at
//! another point `x = g·x₀` is `conj_{g, Stab x₀}` of the base value, with `g` the
//! smallest element carrying `x₀` to `x`.

use thiserror::Error;

use crate::bispan::Bispan;
use crate::functor::TambaraFunctor;
use crate::gset::{GMap, GSet, Orbits};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("expected {expected} inputs (one per source orbit), got {got}")]
    Arity { expected: usize, got: usize },
    #[error("input {index} is not an element of the level of its orbit")]
    Level { index: usize },
}

/// Per-orbit values on a `G`-set.
struct Values<'a, E> {
    set: &'a GSet,
    orbits: Orbits,
    base_values: Vec<E>,
}

impl<E: Clone> Values<'_, E> {
    fn at<T: TambaraFunctor<Elem = E> + ?Sized>(&self, t: &T, x: usize) -> E {
        let o = self.orbits.orbit_of[x];
        let g = self.orbits.transporter[x];
        t.conj(g, self.orbits.stabilizers[o], &self.base_values[o])
    }
}

/// Evaluates `T(b)` on `inputs`, one element per orbit of the source, and returns one
/// element per orbit of the target.
pub fn evaluate_bispan<T: TambaraFunctor + ?Sized>(
    t: &T,
    b: &Bispan,
    inputs: &[T::Elem],
) -> Result<Vec<T::Elem>, EvalError> {
    let x = b.source();
    let orbits = x.orbits();
    if inputs.len() != orbits.len() {
        return Err(EvalError::Arity { expected: orbits.len(), got: inputs.len() });
    }
    for (index, (v, &h)) in inputs.iter().zip(&orbits.stabilizers).enumerate() {
        if !t.contains(h, v) {
            return Err(EvalError::Level { index });
        }
    }
    let values = Values { set: x, orbits, base_values: inputs.to_vec() };
    let on_a = restrict(t, b.restriction(), &values);
    let on_b = push(t, b.norm(), &on_a, Push::Norm);
    Ok(push(t, b.transfer(), &on_b, Push::Transfer).base_values)
}

/// Applies a single generator: `T_f`, `N_f` or `R_f`.
pub fn evaluate_map<T: TambaraFunctor + ?Sized>(
    t: &T,
    kind: crate::bispan::GeneratorKind,
    f: &GMap,
    inputs: &[T::Elem],
) -> Result<Vec<T::Elem>, EvalError> {
    evaluate_bispan(t, &Bispan::from_generator(kind, f), inputs)
}

fn restrict<'a, T: TambaraFunctor + ?Sized>(
    t: &T,
    r: &'a GMap,
    values: &Values<'_, T::Elem>,
) -> Values<'a, T::Elem> {
    let a = r.source();
    let orbits = a.orbits();
    let base_values = orbits
        .bases
        .iter()
        .zip(&orbits.stabilizers)
        .map(|(&p, &stab)| {
            let image = r.apply(p);
            let v = values.at(t, image);
            t.res(values.set.stabilizer(image), stab, &v)
        })
        .collect();
    Values { set: a, orbits, base_values }
}

#[derive(Clone, Copy)]
enum Push {
    Norm,
    Transfer,
}

fn push<'a, T: TambaraFunctor + ?Sized>(
    t: &T,
    f: &'a GMap,
    values: &Values<'_, T::Elem>,
    how: Push,
) -> Values<'a, T::Elem> {
    let target = f.target();
    let orbits = target.orbits();
    let group = t.group();
    let source = values.set;
    let base_values = orbits
        .bases
        .iter()
        .zip(&orbits.stabilizers)
        .map(|(&y, &stab)| {
            let fiber = f.fiber(y);
            // the fiber over y is a Stab(y)-set; take one point per Stab(y)-orbit
            let mut covered = vec![false; source.len()];
            let mut acc = match how {
                Push::Norm => t.one(stab),
                Push::Transfer => t.zero(stab),
            };
            for &p in &fiber {
                if covered[p] {
                    continue;
                }
                for &g in group.subgroup(stab).members() {
                    covered[source.act(g, p)] = true;
                }
                let sub = source.stabilizer(p);
                let v = values.at(t, p);
                acc = match how {
                    Push::Norm => t.mul(stab, &acc, &t.nm(stab, sub, &v)),
                    Push::Transfer => t.add(stab, &acc, &t.tr(stab, sub, &v)),
                };
            }
            acc
        })
        .collect();
    Values { set: target, orbits, base_values }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bispan::{compose, GeneratorKind};
    use crate::burnside::Burnside;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    #[test]
    fn identity_bispan_is_identity() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = Burnside::new(g.clone());
        let x = GSet::cosets(g.clone(), g.whole());
        let v = vec![vec![3, -1]];
        assert_eq!(evaluate_bispan(&a, &Bispan::identity(&x), &v).unwrap(), v);
    }

    #[test]
    fn transfer_of_one_is_t() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = Burnside::new(g.clone());
        let q = GMap::quotient(&g, g.trivial(), g.whole());
        let out = evaluate_map(&a, GeneratorKind::Transfer, &q, &[vec![1]]).unwrap();
        assert_eq!(out, vec![a.orbit(g.whole(), g.trivial())]);
    }

    #[test]
    fn norm_of_transfer_agrees_with_rewrite() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = Burnside::new(g.clone());
        let free = GSet::cosets(g.clone(), g.trivial());
        let q = GMap::to_point(&free);
        let fold = GMap::fold(&free);
        let n = Bispan::from_generator(GeneratorKind::Norm, &q);
        let tr = Bispan::from_generator(GeneratorKind::Transfer, &fold);
        let composite = compose(&n, &tr).unwrap();
        for x in -2..=2i64 {
            for y in -2..=2i64 {
                let inputs = vec![vec![x], vec![y]];
                let step = evaluate_bispan(&a, &tr, &inputs).unwrap();
                let two_step = evaluate_bispan(&a, &n, &step).unwrap();
                assert_eq!(evaluate_bispan(&a, &composite, &inputs).unwrap(), two_step);
            }
        }
    }

    #[test]
    fn arity_is_checked() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let a = Burnside::new(g.clone());
        let x = GSet::cosets(g.clone(), g.whole());
        assert!(matches!(
            evaluate_bispan(&a, &Bispan::identity(&x), &[]),
            Err(EvalError::Arity { .. })
        ));
    }
}
