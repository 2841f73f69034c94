use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use tambara_core::axioms::{check_axioms as run_axioms, DEFAULT_BUDGET};
use tambara_core::bispan::compose;
use tambara_core::files::{
    describe_bispan, describe_ideal, format_element, format_finite_element, load_compose, load_functor,
    load_ideal, parse_burnside_element, parse_finite_element, FileError, GroupRef, LoadedFunctor,
};
use tambara_core::functor::{describe_levels, FiniteTambara, TambaraFunctor};
use tambara_core::ideal::{self, FiniteIdeal};
use tambara_core::spectrum::{self, SpectrumSpace};

use crate::{Common, Format, Precondition, Violation};

pub fn load(c: &Common) -> Result<LoadedFunctor> {
    match (&c.functor, &c.group) {
        (Some(path), _) => Ok(load_functor(path)?),
        (None, Some(name)) => {
            let group = GroupRef::Name(name.clone()).build()?;
            Ok(LoadedFunctor::Burnside(tambara_core::burnside::Burnside::new(std::sync::Arc::new(group))))
        }
        (None, None) => Err(Precondition("either --functor or --group is required".into()).into()),
    }
}

fn finite<'a>(loaded: &'a LoadedFunctor, verb: &str) -> Result<&'a FiniteTambara> {
    loaded.as_finite().ok_or_else(|| {
        Precondition(format!("{verb} needs a functor with finite levels; {} has infinite levels", loaded.name())).into()
    })
}

fn required<'a, T>(value: &'a Option<T>, flag: &str, verb: &str) -> Result<&'a T> {
    value.as_ref().ok_or_else(|| Precondition(format!("{verb} needs {flag}")).into())
}

pub fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new().num_threads(jobs).build().context("building the worker pool")
}

/// Writes `text` (plus a trailing newline) to `--out` or stdout.
pub fn emit(c: &Common, text: &str) -> Result<()> {
    match &c.out {
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|source| FileError::Io { path: path.clone(), source })
            .map_err(Into::into),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn emit_json(c: &Common, value: &Value) -> Result<()> {
    emit(c, &serde_json::to_string_pretty(value)?)
}

fn ideal_json(t: &FiniteTambara, i: &FiniteIdeal) -> Value {
    json!(describe_ideal(t, i))
}

pub fn spec(c: &Common) -> Result<()> {
    let loaded = load(c)?;
    let t = finite(&loaded, "spec")?;
    let space = pool(c.jobs)?.install(|| SpectrumSpace::new(t));
    let report = spectrum::check_spectral(&space);
    let dot = space.to_dot(t);
    if c.format == Format::Dot {
        emit(c, dot.trim_end())?;
    } else {
        let points: Vec<Value> = space
            .points
            .iter()
            .enumerate()
            .map(|(index, p)| json!({ "index": index, "levels": ideal_json(t, p) }))
            .collect();
        let edges: Vec<Value> =
            space.hasse_edges().into_iter().map(|(a, b)| json!({ "contained": a, "in": b })).collect();
        emit_json(
            c,
            &json!({
                "functor": t.name(),
                "levels": describe_levels(t),
                "points": points,
                "specialization": edges,
                "spectral": report,
                "dot": dot,
            }),
        )?;
    }
    if !report.spectral || !report.violations.is_empty() {
        return Err(Violation(format!("spectral space checks: {}", report.violations.join("; "))).into());
    }
    Ok(())
}

pub fn nilradical(c: &Common, verify_primes: bool) -> Result<()> {
    let loaded = load(c)?;
    let t = finite(&loaded, "nilradical")?;
    let nil = ideal::nilradical_levelwise(t);
    let mut out = BTreeMap::new();
    out.insert("functor", json!(t.name()));
    out.insert("nilradical", ideal_json(t, &nil));
    let mut matches = true;
    if verify_primes {
        let primes = pool(c.jobs)?.install(|| spectrum::enumerate_primes(t));
        let meet = spectrum::intersect_all(t, &primes);
        matches = meet == nil;
        out.insert("primes", json!(primes.len()));
        out.insert("intersection_of_primes", ideal_json(t, &meet));
        out.insert("matches_intersection_of_primes", json!(matches));
    }
    emit_json(c, &json!(out))?;
    if !matches {
        return Err(Violation("nil(T) = N(T): the intersection of primes differs from the levelwise nilradical".into()).into());
    }
    Ok(())
}

pub fn radical(c: &Common) -> Result<()> {
    let loaded = load(c)?;
    let t = finite(&loaded, "radical")?;
    let i = load_ideal(t, required(&c.ideal, "--ideal", "radical")?)?;
    let rad = ideal::radical(t, &i);
    let (primes, via_primes) = pool(c.jobs)?.install(|| {
        let primes = spectrum::enumerate_primes(t);
        let via = spectrum::radical_via_primes(t, &primes, &i);
        (primes.len(), via)
    });
    let mut out = BTreeMap::new();
    out.insert("functor", json!(t.name()));
    out.insert("ideal", ideal_json(t, &i));
    out.insert("radical", ideal_json(t, &rad));
    out.insert("primes_above", json!(primes));
    out.insert("matches_intersection_of_primes", json!(rad == via_primes));
    let mut agree = rad == via_primes;
    if let Some(lit) = &c.element {
        let x = parse_finite_element(t, lit)?;
        let verdict = ideal::nakaoka_radical_membership(t, &x, &i, None);
        agree &= verdict.is_member() == rad.contains(&x);
        out.insert(
            "membership",
            json!({
                "element": format_finite_element(t, &x),
                "in_radical": rad.contains(&x),
                "power_iteration": verdict,
                "bound": ideal::pigeonhole_bound(t, &x, &i),
            }),
        );
    }
    emit_json(c, &json!(out))?;
    if !agree {
        return Err(Violation("radical of an ideal: levelwise radical, primes and power iteration disagree".into()).into());
    }
    Ok(())
}

pub fn kilpotent(c: &Common) -> Result<()> {
    let loaded = load(c)?;
    let lit = required(&c.element, "--element", "kilpotent")?;
    let value = match &loaded {
        LoadedFunctor::Finite(t) => {
            let x = parse_finite_element(t, lit)?;
            let e = t.group().trivial();
            let product = spectrum::weyl_product(t, x.level, &x.value);
            let source = t.fixed_point_source().cloned().unwrap_or_else(|| t.underlying_source());
            let kil = spectrum::is_kilpotent(t, &x);
            let oracle = spectrum::localization_oracle_fp(t.group(), &source, t.res(x.level, e, &x.value));
            if kil != oracle {
                emit_json(c, &json!({ "element": lit, "kilpotent": kil, "localization_is_zero": oracle }))?;
                return Err(Violation("kilpotence criterion disagrees with the localization".into()).into());
            }
            json!({
                "functor": t.name(),
                "element": format_finite_element(t, &x),
                "weyl_product": t.level(e).label(product),
                "kilpotent": kil,
            })
        }
        LoadedFunctor::Burnside(a) => {
            let x = parse_burnside_element(a, lit)?;
            let e = a.group().trivial();
            let product = spectrum::weyl_product(a, x.level, &x.value);
            json!({
                "functor": loaded.name(),
                "element": format_element(a, &x),
                "weyl_product": a.format(e, &product),
                "kilpotent": spectrum::is_kilpotent(a, &x),
            })
        }
    };
    emit_json(c, &value)
}

pub fn kilradical(c: &Common) -> Result<()> {
    let loaded = load(c)?;
    let value = match &loaded {
        LoadedFunctor::Finite(t) => {
            let g = t.group();
            let sets = spectrum::kil_sets(t);
            let levels: BTreeMap<String, Vec<String>> = g
                .subgroups()
                .map(|h| (g.subgroup_label(h), sets[h.0].ones().map(|x| t.level(h).label(x).to_string()).collect()))
                .collect();
            let is_ideal = t.check_ideal(&sets).is_ok();
            let trivial = match spectrum::kilradical_trivial_action(t) {
                Ok(i) => {
                    if i.levels() != sets.as_slice() {
                        return Err(Violation("kilradical for a trivial action differs from the kilpotent sets".into()).into());
                    }
                    json!(true)
                }
                Err(spectrum::SpectrumError::NontrivialAction(_)) => json!(false),
                Err(e) => return Err(Violation(e.to_string()).into()),
            };
            json!({ "functor": t.name(), "kilpotent": levels, "is_ideal": is_ideal, "trivial_weyl_action": trivial })
        }
        LoadedFunctor::Burnside(a) => {
            let g = a.group();
            let mut levels = BTreeMap::new();
            for h in g.subgroups() {
                let kernel = spectrum::kil_burnside_level(a, h).map_err(|e| Violation(e.to_string()))?;
                let kernel: Vec<String> = kernel.basis().iter().map(|v| a.format(h, v)).collect();
                let basis: Vec<String> = (0..a.rank(h)).map(|i| a.basis_name(h, i)).collect();
                levels.insert(g.subgroup_label(h), json!({ "basis": basis, "kernel_of_restriction": kernel }));
            }
            json!({ "functor": loaded.name(), "kilpotent": levels })
        }
    };
    emit_json(c, &value)
}

pub fn primes(c: &Common) -> Result<()> {
    let loaded = load(c)?;
    let t = finite(&loaded, "primes")?;
    let primes = pool(c.jobs)?.install(|| spectrum::enumerate_primes(t));
    let listed: Vec<Value> = primes.iter().map(|p| ideal_json(t, p)).collect();
    emit_json(c, &json!({ "functor": t.name(), "count": primes.len(), "primes": listed }))
}

pub fn compose_bispan(input: &Path, c: &Common) -> Result<()> {
    let (group, first, second) = load_compose(input)?;
    let composite = compose(&second, &first).map_err(|e| FileError::Precondition(e.to_string()))?;
    let summary = |b: &tambara_core::bispan::Bispan| {
        let label = |s: &tambara_core::gset::GSet| -> Vec<String> {
            s.orbits().stabilizers.iter().map(|&h| group.subgroup_label(h)).collect()
        };
        json!({
            "source_orbits": label(b.source()),
            "middle_left_orbits": label(b.restriction().source()),
            "middle_right_orbits": label(b.norm().target()),
            "target_orbits": label(b.target()),
        })
    };
    emit_json(
        c,
        &json!({
            "group": group.name(),
            "orbits": summary(&composite),
            "composite": describe_bispan(&composite),
        }),
    )
}

pub fn check_axioms(c: &Common) -> Result<()> {
    let loaded = load(c)?;
    let report = match &loaded {
        LoadedFunctor::Finite(t) => run_axioms(t, DEFAULT_BUDGET, c.seed),
        LoadedFunctor::Burnside(a) => run_axioms(a, DEFAULT_BUDGET, c.seed),
    };
    emit_json(c, &json!({ "functor": loaded.name(), "passed": report.passed(), "checks": report.checks }))?;
    if let Some(first) = report.failures().next() {
        return Err(Violation(format!("axiom {} fails: {}", first.identity, first.witness.as_deref().unwrap_or(""))).into());
    }
    Ok(())
}
