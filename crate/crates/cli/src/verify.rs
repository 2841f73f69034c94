//! The corpus suite: every theorem check on every functor spec in a directory.

use std::path::{Path, PathBuf};

use anyhow::Result;
use rayon::prelude::*;
use tambara_core::axioms::{check_axioms, DEFAULT_BUDGET};
use tambara_core::burnside::{window_elements, Burnside};
use tambara_core::files::{format_element, format_finite_element, load_functor, FileError, LoadedFunctor};
use tambara_core::functor::{Element, FiniteTambara, TambaraFunctor};
use tambara_core::ideal::{self, FiniteIdeal, RadicalMembership};
use tambara_core::spectrum::{self, SpectrumSpace};

use crate::commands::{emit, pool};
use crate::{Common, Violation};

/// Outcome of one invariant on one functor; `Err` carries the witness.
struct Line {
    functor: String,
    invariant: &'static str,
    outcome: Result<(), String>,
}

impl Line {
    fn render(&self) -> String {
        match &self.outcome {
            Ok(()) => format!("{} {} pass", self.functor, self.invariant),
            Err(w) => format!("{} {} FAIL {}", self.functor, self.invariant, w),
        }
    }
}

fn check(cond: bool, witness: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}

fn corpus_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|source| FileError::Io { path: dir.to_path_buf(), source })?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|source| FileError::Io { path: dir.to_path_buf(), source })?.path();
        if path.extension().is_some_and(|e| e == "toml") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

pub fn run(dir: &Path, c: &Common) -> Result<()> {
    let files = corpus_files(dir)?;
    let loaded = files
        .iter()
        .map(|p| {
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            load_functor(p).map(|f| (stem, f))
        })
        .collect::<Result<Vec<_>, FileError>>()?;
    let seed = c.seed;
    let groups: Vec<Vec<Line>> = pool(c.jobs)?.install(|| {
        loaded
            .par_iter()
            .map(|(name, f)| match f {
                LoadedFunctor::Finite(t) => finite_suite(name, t, seed),
                LoadedFunctor::Burnside(a) => burnside_suite(name, a, seed),
            })
            .collect()
    });
    let lines: Vec<&Line> = groups.iter().flatten().collect();
    let text: Vec<String> = lines.iter().map(|l| l.render()).collect();
    if !text.is_empty() {
        emit(c, &text.join("\n"))?;
    } else if let Some(path) = &c.out {
        std::fs::write(path, "").map_err(|source| FileError::Io { path: path.clone(), source })?;
    }
    let failed: Vec<String> =
        lines.iter().filter(|l| l.outcome.is_err()).map(|l| format!("{} {}", l.functor, l.invariant)).collect();
    if !failed.is_empty() {
        return Err(Violation(failed.join(", ")).into());
    }
    Ok(())
}

fn axiom_lines<T: TambaraFunctor>(name: &str, t: &T, seed: u64) -> (Vec<Line>, bool) {
    let report = check_axioms(t, DEFAULT_BUDGET, seed);
    let ok = report.passed();
    let lines = report
        .checks
        .into_iter()
        .map(|c| Line {
            functor: name.to_string(),
            invariant: c.identity,
            outcome: match c.witness {
                None => Ok(()),
                Some(w) => Err(w),
            },
        })
        .collect();
    (lines, ok)
}

type Check = (&'static str, fn(&FiniteTambara) -> Result<(), String>);

const FINITE_CHECKS: &[Check] = &[
    ("nil-equals-intersection-of-primes", nil_equals_primes),
    ("radical-is-intersection-of-primes", radical_theorem),
    ("nilpotent-iff-principal-power-vanishes", nilpotent_powers),
    ("non-nilpotent-avoided-by-prime", prime_avoidance),
    ("basic-open-intersection-decomposes", d_decomposition),
    ("basic-opens-quasi-compact", quasi_compact),
    ("spectrum-is-spectral", spectral),
    ("kilpotent-iff-localization-vanishes", kilpotence),
];

fn finite_suite(name: &str, t: &FiniteTambara, seed: u64) -> Vec<Line> {
    let (mut lines, ok) = axiom_lines(name, t, seed);
    for &(invariant, f) in FINITE_CHECKS {
        let outcome = if ok { f(t) } else { Err("skipped: functor fails the axioms".into()) };
        lines.push(Line { functor: name.to_string(), invariant, outcome });
    }
    lines
}

fn burnside_suite(name: &str, a: &Burnside, seed: u64) -> Vec<Line> {
    let (mut lines, _) = axiom_lines(name, a, seed);
    lines.push(Line { functor: name.to_string(), invariant: "kilpotent-iff-kernel-of-restriction", outcome: burnside_kil(a) });
    lines
}

fn nil_equals_primes(t: &FiniteTambara) -> Result<(), String> {
    let nil = spectrum::nil_via_primes(t);
    let n = ideal::nilradical_levelwise(t);
    check(nil == n, || format!("intersection of primes {:?}, levelwise nilradical {:?}", nil.describe(t), n.describe(t)))
}

fn radical_theorem(t: &FiniteTambara) -> Result<(), String> {
    let primes = spectrum::enumerate_primes(t);
    for i in ideal::all_ideals(t) {
        let rad = ideal::radical(t, &i);
        check(rad == spectrum::radical_via_primes(t, &primes, &i), || format!("ideal {:?}", i.describe(t)))?;
        for x in t.all_elements() {
            let verdict = ideal::nakaoka_radical_membership(t, &x, &i, None);
            check(
                !matches!(verdict, RadicalMembership::Inconclusive { .. }) && verdict.is_member() == rad.contains(&x),
                || format!("{} in ideal {:?}: {verdict:?}", format_finite_element(t, &x), i.describe(t)),
            )?;
        }
    }
    Ok(())
}

fn nilpotent_powers(t: &FiniteTambara) -> Result<(), String> {
    let zero = FiniteIdeal::zero(t);
    for y in t.all_elements() {
        let nilpotent = t.level(y.level).is_nilpotent(y.value);
        let verdict = ideal::nakaoka_radical_membership(t, &y, &zero, None);
        check(verdict.is_member() == nilpotent, || format!("{}: {verdict:?}", format_finite_element(t, &y)))?;
    }
    Ok(())
}

fn prime_avoidance(t: &FiniteTambara) -> Result<(), String> {
    let primes = spectrum::enumerate_primes(t);
    for x in t.all_elements() {
        if !t.level(x.level).is_nilpotent(x.value) {
            check(!spectrum::d_open(&primes, &x).is_clear(), || format!("D({}) is empty", format_finite_element(t, &x)))?;
        }
    }
    Ok(())
}

fn d_decomposition(t: &FiniteTambara) -> Result<(), String> {
    let points = spectrum::enumerate_primes(t);
    let elements = t.all_elements();
    for e in &elements {
        for f in &elements {
            check(spectrum::d_intersection_decomposition(t, &points, e, f).holds, || {
                format!("D({}) ∩ D({})", format_finite_element(t, e), format_finite_element(t, f))
            })?;
        }
    }
    Ok(())
}

fn quasi_compact(t: &FiniteTambara) -> Result<(), String> {
    let space = SpectrumSpace::new(t);
    for e in t.all_elements() {
        let report = spectrum::check_basic_open_quasi_compact(t, &space, &e);
        check(report.failures.is_empty(), || format!("D({}) has a cover without certificate", format_finite_element(t, &e)))?;
    }
    Ok(())
}

fn spectral(t: &FiniteTambara) -> Result<(), String> {
    let report = spectrum::check_spectral(&SpectrumSpace::new(t));
    check(report.spectral && report.violations.is_empty(), || report.violations.join("; "))
}

fn kilpotence(t: &FiniteTambara) -> Result<(), String> {
    let g = t.group();
    let e = g.trivial();
    let source = t.fixed_point_source().cloned().unwrap_or_else(|| t.underlying_source());
    for x in t.all_elements() {
        let criterion = spectrum::is_kilpotent(t, &x);
        let oracle = spectrum::localization_oracle_fp(g, &source, t.res(x.level, e, &x.value));
        check(criterion == oracle, || {
            format!("{}: criterion {criterion}, localization {oracle}", format_finite_element(t, &x))
        })?;
    }
    Ok(())
}

fn burnside_kil(a: &Burnside) -> Result<(), String> {
    let g = a.group();
    let e = g.trivial();
    for h in g.subgroups() {
        let kernel = spectrum::kil_burnside_level(a, h).map_err(|err| err.to_string())?;
        for x in window_elements(a.rank(h), 3) {
            let in_kernel = a.res(h, e, &x) == a.zero(e);
            let x = Element::new(h, x);
            check(spectrum::is_kilpotent(a, &x) == in_kernel && kernel.contains(&x.value) == in_kernel, || {
                format_element(a, &x)
            })?;
        }
    }
    Ok(())
}
