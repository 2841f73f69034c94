//! File formats: functor specs (TOML), ideals and bispans (JSON), element literals.
//!
//! Element literals have the form `expr@SUBGROUP`. For finite levels `expr` is a ring
//! label, `#i` for the element with index `i`, or an integer-linear combination of
//! those. For the Burnside functor the atoms are `1`, `t`, `b<i>` and `[SUBGROUP]`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bispan::Bispan;
use crate::burnside::Burnside;
use crate::functor::{Element, FiniteTambara, FixedPointSource, FunctorError, TambaraFunctor, TambaraTables};
use crate::group::{FiniteGroup, GroupSpec, SubgroupId};
use crate::gset::{extend_from_bases, GMap, GSet};
use crate::ideal::{self, FiniteIdeal};
use crate::ring::{FiniteRing, RingTables};

#[derive(Debug, Error)]
pub enum FileError {
    #[error("cannot access {path}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("undefined reference: {0}")]
    Undefined(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl From<FunctorError> for FileError {
    fn from(e: FunctorError) -> Self {
        match e {
            FunctorError::UnknownSubgroup(s) => FileError::Undefined(format!("subgroup {s}")),
            FunctorError::MissingLevel(s) => FileError::Undefined(format!("level for subgroup {s}")),
            other => FileError::Precondition(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, FileError> {
    std::fs::read_to_string(path).map_err(|source| FileError::Io { path: path.to_path_buf(), source })
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GroupRef {
    Name(String),
    Spec(GroupSpec),
}

impl GroupRef {
    pub fn build(&self) -> Result<FiniteGroup, FileError> {
        match self {
            GroupRef::Name(n) => FiniteGroup::builtin(n).map_err(|_| FileError::Undefined(format!("group {n}"))),
            GroupRef::Spec(s) => s.build().map_err(|e| FileError::Precondition(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum RingRef {
    Name(String),
    Tables(RingTables),
}

impl RingRef {
    pub fn build(&self) -> Result<FiniteRing, FileError> {
        match self {
            RingRef::Name(n) => FiniteRing::builtin(n).map_err(|_| FileError::Undefined(format!("ring {n}"))),
            RingRef::Tables(t) => FiniteRing::from_ring_tables(t).map_err(|e| FileError::Precondition(e.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ActionRef {
    /// `trivial`, `swap` or `frobenius`.
    Named(String),
    /// Permute tuple coordinates as `G` permutes `G/H`.
    Coordinates { coordinates: String },
    /// `table[g]` is the automorphism by which `g` acts, as element indices.
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctorFile {
    Burnside {
        #[serde(default)]
        name: Option<String>,
        group: GroupRef,
    },
    FixedPoint {
        #[serde(default)]
        name: Option<String>,
        group: GroupRef,
        ring: RingRef,
        #[serde(default)]
        action: Option<ActionRef>,
    },
    Tables {
        #[serde(default)]
        name: Option<String>,
        path: PathBuf,
    },
    Zero {
        #[serde(default)]
        name: Option<String>,
        group: GroupRef,
    },
}

/// A loaded functor: levelwise finite, or the Burnside functor.
#[derive(Debug)]
pub enum LoadedFunctor {
    Finite(FiniteTambara),
    Burnside(Burnside),
}

impl LoadedFunctor {
    pub fn name(&self) -> String {
        match self {
            LoadedFunctor::Finite(t) => t.name().to_string(),
            LoadedFunctor::Burnside(a) => format!("A({})", a.group().name()),
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        match self {
            LoadedFunctor::Finite(t) => t.group(),
            LoadedFunctor::Burnside(a) => a.group(),
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteTambara> {
        match self {
            LoadedFunctor::Finite(t) => Some(t),
            LoadedFunctor::Burnside(_) => None,
        }
    }
}

pub fn load_functor(path: &Path) -> Result<LoadedFunctor, FileError> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    parse_functor(&text, base)
}

/// Parses a functor spec; relative table paths resolve against `base`.
pub fn parse_functor(text: &str, base: &Path) -> Result<LoadedFunctor, FileError> {
    let file: FunctorFile = toml::from_str(text).map_err(|e| FileError::Parse(e.message().to_string()))?;
    build_functor(&file, base)
}

pub fn build_functor(file: &FunctorFile, base: &Path) -> Result<LoadedFunctor, FileError> {
    match file {
        FunctorFile::Burnside { group, .. } => Ok(LoadedFunctor::Burnside(Burnside::new(Arc::new(group.build()?)))),
        FunctorFile::Zero { name, group } => {
            let mut t = FiniteTambara::zero(Arc::new(group.build()?));
            if let Some(n) = name {
                t.set_name(n.clone());
            }
            Ok(LoadedFunctor::Finite(t))
        }
        FunctorFile::FixedPoint { name, group, ring, action } => {
            let group = Arc::new(group.build()?);
            let ring = ring.build()?;
            let table = match action {
                None => trivial_action(&group, &ring),
                Some(a) => action_table(&group, &ring, a)?,
            };
            let source = FixedPointSource::new(&group, ring, table)?;
            let mut t = FiniteTambara::fixed_point(group, source);
            if let Some(n) = name {
                t.set_name(n.clone());
            }
            Ok(LoadedFunctor::Finite(t))
        }
        FunctorFile::Tables { name, path } => {
            let full = base.join(path);
            let text = read(&full)?;
            let tables: TambaraTables =
                serde_json::from_str(&text).map_err(|e| FileError::Parse(format!("{}: {e}", full.display())))?;
            let mut t = FiniteTambara::from_tables(&tables)?;
            if let Some(n) = name {
                t.set_name(n.clone());
            }
            Ok(LoadedFunctor::Finite(t))
        }
    }
}

pub fn trivial_action(group: &FiniteGroup, ring: &FiniteRing) -> Vec<Vec<usize>> {
    vec![ring.elements().collect(); group.order()]
}

pub fn action_table(group: &Arc<FiniteGroup>, ring: &FiniteRing, action: &ActionRef) -> Result<Vec<Vec<usize>>, FileError> {
    match action {
        ActionRef::Named(n) => match n.as_str() {
            "trivial" => Ok(trivial_action(group, ring)),
            "swap" => {
                if group.order() != 2 {
                    return Err(FileError::Precondition("swap needs a group of order 2".into()));
                }
                coordinate_action(group, ring, group.trivial())
            }
            "frobenius" => frobenius_action(group, ring),
            other => Err(FileError::Undefined(format!("action {other}"))),
        },
        ActionRef::Coordinates { coordinates } => {
            let h = group
                .parse_subgroup(coordinates)
                .ok_or_else(|| FileError::Undefined(format!("subgroup {coordinates}")))?;
            coordinate_action(group, ring, h)
        }
        ActionRef::Table(t) => Ok(t.clone()),
    }
}

fn tuple_of(label: &str) -> Option<Vec<&str>> {
    Some(label.strip_prefix('(')?.strip_suffix(')')?.split(',').map(str::trim).collect())
}

/// `G` acting on a ring of `[G:H]`-tuples by permuting coordinates like `G/H`.
pub fn coordinate_action(group: &Arc<FiniteGroup>, ring: &FiniteRing, h: SubgroupId) -> Result<Vec<Vec<usize>>, FileError> {
    let cosets = GSet::cosets(group.clone(), h);
    let k = cosets.len();
    let tuples: Vec<Vec<&str>> = ring
        .elements()
        .map(|x| tuple_of(ring.label(x)).filter(|t| t.len() == k))
        .collect::<Option<_>>()
        .ok_or_else(|| FileError::Precondition(format!("ring {} is not a ring of {k}-tuples", ring.name())))?;
    let mut table = Vec::with_capacity(group.order());
    for g in group.elements() {
        let row = tuples
            .iter()
            .map(|t| {
                let mut moved = vec![""; k];
                for (i, c) in t.iter().enumerate() {
                    moved[cosets.act(g, i)] = c;
                }
                ring.parse_label(&format!("({})", moved.join(",")))
                    .ok_or_else(|| FileError::Precondition("coordinate permutation leaves the ring".into()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        table.push(row);
    }
    Ok(table)
}

/// A cyclic group acting through powers of `x ↦ x^p`, `p` the characteristic.
pub fn frobenius_action(group: &FiniteGroup, ring: &FiniteRing) -> Result<Vec<Vec<usize>>, FileError> {
    let p = (1..=ring.size())
        .find(|&n| ring.integer(n as i64) == ring.zero())
        .unwrap_or(ring.size());
    let order_of = |g: usize| (1..=group.order()).find(|&n| (0..n).fold(0, |acc, _| group.mul(acc, g)) == 0).unwrap();
    let generator = group
        .elements()
        .find(|&g| order_of(g) == group.order())
        .ok_or_else(|| FileError::Precondition("frobenius needs a cyclic group".into()))?;
    let phi: Vec<usize> = ring.elements().map(|x| ring.pow(x, p)).collect();
    let mut table = vec![Vec::new(); group.order()];
    let mut g = 0;
    let mut power: Vec<usize> = ring.elements().collect();
    for _ in 0..group.order() {
        table[g] = power.clone();
        power = power.iter().map(|&x| phi[x]).collect();
        g = group.mul(generator, g);
    }
    Ok(table)
}

fn split_literal(literal: &str) -> Result<(&str, &str), FileError> {
    literal
        .rsplit_once('@')
        .map(|(e, h)| (e.trim(), h.trim()))
        .ok_or_else(|| FileError::Parse(format!("element {literal:?} lacks @SUBGROUP")))
}

fn level_of(group: &FiniteGroup, label: &str) -> Result<SubgroupId, FileError> {
    group.parse_subgroup(label).ok_or_else(|| FileError::Undefined(format!("subgroup {label}")))
}

/// Splits `expr` into signed terms at top-level `+` and `-`. A sign with no pending
/// term text is unary.
fn terms(expr: &str) -> Result<Vec<(i64, String)>, FileError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut sign = 1i64;
    let mut current = String::new();
    for c in expr.chars() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if !current.trim().is_empty() {
                    out.push((sign, current.trim().to_string()));
                    current.clear();
                    sign = 1;
                }
                if c == '-' {
                    sign = -sign;
                }
                continue;
            }
            _ => {}
        }
        current.push(c);
    }
    if current.trim().is_empty() {
        return Err(FileError::Parse(format!("dangling sign or empty expression in {expr:?}")));
    }
    out.push((sign, current.trim().to_string()));
    Ok(out)
}

/// Splits a term into an integer coefficient and an optional atom.
fn coefficient(term: &str) -> Result<(i64, Option<&str>), FileError> {
    let digits = term.find(|c: char| !c.is_ascii_digit()).unwrap_or(term.len());
    let (num, rest) = term.split_at(digits);
    let rest = rest.trim().trim_start_matches('*').trim();
    let n = if num.is_empty() {
        1
    } else {
        num.parse::<i64>().map_err(|_| FileError::Parse(format!("coefficient in {term:?}")))?
    };
    Ok((n, (!rest.is_empty()).then_some(rest)))
}

pub fn parse_finite_element(t: &FiniteTambara, literal: &str) -> Result<Element<usize>, FileError> {
    let (expr, label) = split_literal(literal)?;
    let h = level_of(t.group(), label)?;
    let ring = t.level(h);
    if let Some(x) = ring.parse_label(expr) {
        return Ok(Element::new(h, x));
    }
    let atom = |a: &str| -> Result<usize, FileError> {
        if let Some(i) = a.strip_prefix('#') {
            let i: usize = i.parse().map_err(|_| FileError::Parse(format!("index {a:?}")))?;
            return (i < ring.size()).then_some(i).ok_or_else(|| FileError::Undefined(format!("element {a}")));
        }
        ring.parse_label(a).ok_or_else(|| FileError::Undefined(format!("element {a} of {}", ring.name())))
    };
    let mut acc = ring.zero();
    for (sign, term) in terms(expr)? {
        let v = match ring.parse_label(&term) {
            Some(x) => x,
            None => {
                let (n, a) = coefficient(&term)?;
                match a {
                    None => ring.integer(n),
                    Some(a) => ring.mul(ring.integer(n), atom(a)?),
                }
            }
        };
        acc = if sign < 0 { ring.sub(acc, v) } else { ring.add(acc, v) };
    }
    Ok(Element::new(h, acc))
}

pub fn parse_burnside_element(a: &Burnside, literal: &str) -> Result<Element<Vec<i64>>, FileError> {
    let (expr, label) = split_literal(literal)?;
    let h = level_of(a.group(), label)?;
    let mut acc = a.zero(h);
    for (sign, term) in terms(expr)? {
        let (n, atom) = coefficient(&term)?;
        let i = match atom {
            None => a.parse_atom(h, "1").expect("1 is always a basis element"),
            Some(atom) => a
                .parse_atom(h, atom)
                .ok_or_else(|| FileError::Undefined(format!("Burnside atom {atom} at {label}")))?,
        };
        acc[i] += sign * n;
    }
    Ok(Element::new(h, acc))
}

pub fn format_finite_element(t: &FiniteTambara, x: &Element<usize>) -> String {
    format!("{}@{}", t.level(x.level).label(x.value), t.group().subgroup_label(x.level))
}

pub fn format_element<T: TambaraFunctor + ?Sized>(t: &T, x: &Element<T::Elem>) -> String {
    format!("{}@{}", t.format(x.level, &x.value), t.group().subgroup_label(x.level))
}

/// An ideal given by its levels or by generators.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IdealFile {
    Levels { levels: BTreeMap<String, Vec<String>> },
    Generators { generators: Vec<String> },
}

pub fn load_ideal(t: &FiniteTambara, path: &Path) -> Result<FiniteIdeal, FileError> {
    let text = read(path)?;
    let file: IdealFile = serde_json::from_str(&text).map_err(|e| FileError::Parse(e.to_string()))?;
    build_ideal(t, &file)
}

pub fn build_ideal(t: &FiniteTambara, file: &IdealFile) -> Result<FiniteIdeal, FileError> {
    match file {
        IdealFile::Generators { generators } => {
            let gens = generators.iter().map(|g| parse_finite_element(t, g)).collect::<Result<Vec<_>, _>>()?;
            Ok(ideal::closure(t, &gens))
        }
        IdealFile::Levels { levels } => {
            let g = t.group();
            let mut sets: Vec<_> = t.levels().iter().map(|r| r.empty_set()).collect();
            let mut given = vec![false; g.subgroup_count()];
            for (label, members) in levels {
                let h = level_of(g, label)?;
                given[h.0] = true;
                for m in members {
                    let x = parse_finite_element(t, &format!("{m}@{label}"))?;
                    sets[h.0].insert(x.value);
                }
            }
            if let Some(h) = g.subgroups().find(|h| !given[h.0]) {
                return Err(FileError::Undefined(format!("ideal level {}", g.subgroup_label(h))));
            }
            t.check_ideal(&sets).map_err(|e| FileError::Precondition(format!("not a Tambara ideal: {e}")))?;
            Ok(FiniteIdeal::from_levels(sets))
        }
    }
}

/// Levels of an ideal as labels, keyed by subgroup label.
pub fn describe_ideal(t: &FiniteTambara, i: &FiniteIdeal) -> BTreeMap<String, Vec<String>> {
    i.describe(t).into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum GSetFile {
    /// A sum of orbits `G/H`, one subgroup label per orbit.
    Orbits { orbits: Vec<String> },
    /// `action[g][x]`.
    Action { action: Vec<Vec<usize>> },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum MapFile {
    /// Image of each orbit's base point.
    Bases { bases: Vec<usize> },
    /// Image of every point.
    Points { points: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct BispanFile {
    pub source: GSetFile,
    pub middle_left: GSetFile,
    pub middle_right: GSetFile,
    pub target: GSetFile,
    pub restriction: MapFile,
    pub norm: MapFile,
    pub transfer: MapFile,
}

/// Two bispans to compose: `second ∘ first`.
#[derive(Clone, Debug, PartialEq, Deserialize, Serialize)]
pub struct ComposeFile {
    pub group: GroupRef,
    pub first: BispanFile,
    pub second: BispanFile,
}

fn build_gset(group: &Arc<FiniteGroup>, file: &GSetFile) -> Result<GSet, FileError> {
    match file {
        GSetFile::Action { action } => {
            GSet::new(group.clone(), action.clone()).map_err(|e| FileError::Precondition(e.to_string()))
        }
        GSetFile::Orbits { orbits } => {
            let parts = orbits
                .iter()
                .map(|l| Ok(GSet::cosets(group.clone(), level_of(group, l)?)))
                .collect::<Result<Vec<_>, FileError>>()?;
            if parts.is_empty() {
                return Ok(GSet::empty(group.clone()));
            }
            Ok(GSet::sum(&parts.iter().collect::<Vec<_>>()).0)
        }
    }
}

fn build_map(source: &GSet, target: &GSet, file: &MapFile) -> Result<GMap, FileError> {
    match file {
        MapFile::Points { points } => GMap::new(source.clone(), target.clone(), points.clone())
            .map_err(|e| FileError::Precondition(e.to_string())),
        MapFile::Bases { bases } => {
            if bases.len() != source.orbits().len() || bases.iter().any(|&b| b >= target.len()) {
                return Err(FileError::Precondition("one base image per orbit, inside the target, is required".into()));
            }
            extend_from_bases(source, target, bases)
                .ok_or_else(|| FileError::Precondition("base images do not extend to an equivariant map".into()))
        }
    }
}

pub fn build_bispan(group: &Arc<FiniteGroup>, file: &BispanFile) -> Result<Bispan, FileError> {
    let x = build_gset(group, &file.source)?;
    let a = build_gset(group, &file.middle_left)?;
    let b = build_gset(group, &file.middle_right)?;
    let y = build_gset(group, &file.target)?;
    Bispan::new(build_map(&a, &x, &file.restriction)?, build_map(&a, &b, &file.norm)?, build_map(&b, &y, &file.transfer)?)
        .map_err(|e| FileError::Precondition(e.to_string()))
}

/// The explicit form of a bispan: full action tables and point maps.
pub fn describe_bispan(b: &Bispan) -> BispanFile {
    let set = |s: &GSet| GSetFile::Action { action: s.action_table().to_vec() };
    let map = |f: &GMap| MapFile::Points { points: f.points().to_vec() };
    BispanFile {
        source: set(b.source()),
        middle_left: set(b.restriction().source()),
        middle_right: set(b.norm().target()),
        target: set(b.target()),
        restriction: map(b.restriction()),
        norm: map(b.norm()),
        transfer: map(b.transfer()),
    }
}

pub fn load_compose(path: &Path) -> Result<(Arc<FiniteGroup>, Bispan, Bispan), FileError> {
    let text = read(path)?;
    let file: ComposeFile = serde_json::from_str(&text).map_err(|e| FileError::Parse(e.to_string()))?;
    let group = Arc::new(file.group.build()?);
    let first = build_bispan(&group, &file.first)?;
    let second = build_bispan(&group, &file.second)?;
    Ok((group, first, second))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(text: &str) -> FiniteTambara {
        match parse_functor(text, Path::new(".")).unwrap() {
            LoadedFunctor::Finite(t) => t,
            LoadedFunctor::Burnside(_) => panic!("expected a finite functor"),
        }
    }

    #[test]
    fn fixed_point_specs() {
        let t = fp("kind = \"fixed_point\"\ngroup = \"C2\"\nring = \"Z/4\"\n");
        assert_eq!(t.level(t.group().whole()).size(), 4);
        let t = fp("kind = \"fixed_point\"\ngroup = \"C2\"\nring = \"F2xF2\"\naction = \"swap\"\n");
        assert_eq!(t.level(t.group().whole()).size(), 2);
        let t = fp("kind = \"fixed_point\"\ngroup = \"C2\"\nring = \"F4\"\naction = \"frobenius\"\n");
        assert_eq!(t.level(t.group().whole()).size(), 2);
        let t = fp("kind = \"fixed_point\"\ngroup = \"S3\"\nring = \"F2^3\"\naction = { coordinates = \"{0,3}\" }\n");
        let sizes: Vec<usize> = t.levels().iter().map(|r| r.size()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 3);
    }

    #[test]
    fn bad_specs_are_classified() {
        let parse = |s: &str| parse_functor(s, Path::new("."));
        assert!(matches!(parse("kind = \"fixed_point\"\ngroup ="), Err(FileError::Parse(_))));
        assert!(matches!(parse("kind = \"burnside\"\ngroup = \"Q8\""), Err(FileError::Undefined(_))));
        assert!(matches!(
            parse("kind = \"fixed_point\"\ngroup = \"C3\"\nring = \"F2xF2\"\naction = \"swap\""),
            Err(FileError::Precondition(_))
        ));
    }

    #[test]
    fn element_literals() {
        let t = fp("kind = \"fixed_point\"\ngroup = \"C2\"\nring = \"F4\"\naction = \"frobenius\"\n");
        let e = t.group().trivial();
        assert_eq!(parse_finite_element(&t, "w+1@e").unwrap(), Element::new(e, 3));
        assert_eq!(parse_finite_element(&t, "w + 1 @ e").unwrap(), Element::new(e, 3));
        assert_eq!(parse_finite_element(&t, "#2@e").unwrap(), Element::new(e, 2));
        assert!(matches!(parse_finite_element(&t, "w"), Err(FileError::Parse(_))));
        assert!(matches!(parse_finite_element(&t, "v@e"), Err(FileError::Undefined(_))));
        let z4 = fp("kind = \"fixed_point\"\ngroup = \"C2\"\nring = \"Z/4\"\n");
        assert_eq!(parse_finite_element(&z4, "-1@C2").unwrap().value, 3);
        assert_eq!(parse_finite_element(&z4, "2*3 - 1@e").unwrap().value, 1);

        let a = Burnside::new(Arc::new(FiniteGroup::cyclic(3)));
        let x = parse_burnside_element(&a, "t-3@C3").unwrap();
        assert_eq!(x.value, vec![1, -3]);
        assert_eq!(format_element(&a, &x), "t - 3@C3");
        assert_eq!(parse_burnside_element(&a, "-2t + 1@G").unwrap().value, vec![-2, 1]);
    }

    #[test]
    fn ideal_files() {
        let t = fp("kind = \"fixed_point\"\ngroup = \"C2\"\nring = \"Z/4\"\n");
        let gens: IdealFile = serde_json::from_str(r#"{"kind":"generators","generators":["2@e"]}"#).unwrap();
        let i = build_ideal(&t, &gens).unwrap();
        assert_eq!(i.members(t.group().whole()), vec![0]);
        let bad: IdealFile = serde_json::from_str(r#"{"kind":"levels","levels":{"e":["0"],"C2":["0","2"]}}"#).unwrap();
        assert!(matches!(build_ideal(&t, &bad), Err(FileError::Precondition(_))));
    }

    #[test]
    fn bispan_round_trip() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let file: BispanFile = serde_json::from_str(
            r#"{"source":{"orbits":["e"]},"middle_left":{"orbits":["e"]},"middle_right":{"orbits":["e"]},
                "target":{"orbits":["C2"]},"restriction":{"bases":[0]},"norm":{"bases":[0]},"transfer":{"bases":[0]}}"#,
        )
        .unwrap();
        let b = build_bispan(&g, &file).unwrap();
        let again = build_bispan(&g, &describe_bispan(&b)).unwrap();
        assert!(b.is_isomorphic(&again));
    }
}
