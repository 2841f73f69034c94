//! Finite commutative rings given by explicit addition and multiplication tables.

use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest ring handled; exhaustive checks are cubic in the size.
pub const MAX_RING_SIZE: usize = 256;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("a ring needs at least one element")]
    Empty,
    #[error("ring of size {0} exceeds the supported maximum of {MAX_RING_SIZE}")]
    TooLarge(usize),
    #[error("{0} table is not square of the declared size")]
    NotSquare(&'static str),
    #[error("{0} table entry out of range")]
    OutOfRange(&'static str),
    #[error("{law} fails at {witness}")]
    Law { law: &'static str, witness: String },
    #[error("no element acts as {0}")]
    NoIdentity(&'static str),
    #[error("unknown builtin ring {0:?}")]
    UnknownBuiltin(String),
    #[error("label count does not match ring size")]
    Labels,
    #[error("map is not a ring automorphism: {0}")]
    NotAutomorphism(String),
}

/// A finite commutative unital ring. Elements are indices `0..size`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
    neg: Vec<usize>,
    labels: Vec<String>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({}, {} elements)", self.name, self.size())
    }
}

/// Serializable table form of a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingTables {
    #[serde(default)]
    pub name: Option<String>,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

impl FiniteRing {
    /// Validates every ring axiom exhaustively.
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, RingError> {
        let n = add.len();
        if n == 0 {
            return Err(RingError::Empty);
        }
        if n > MAX_RING_SIZE {
            return Err(RingError::TooLarge(n));
        }
        for (table, what) in [(&add, "addition"), (&mul, "multiplication")] {
            if table.len() != n || table.iter().any(|r| r.len() != n) {
                return Err(RingError::NotSquare(what));
            }
            if table.iter().flatten().any(|&v| v >= n) {
                return Err(RingError::OutOfRange(what));
            }
        }
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[z][a] == a && add[a][z] == a))
            .ok_or(RingError::NoIdentity("additive identity"))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|a| mul[u][a] == a && mul[a][u] == a))
            .ok_or(RingError::NoIdentity("multiplicative identity"))?;
        let mut neg = vec![0; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a][b] == zero).ok_or_else(|| RingError::Law {
                law: "additive inverse",
                witness: format!("a={a}"),
            })?;
        }
        let law = |law: &'static str, witness: String| Err(RingError::Law { law, witness });
        for a in 0..n {
            for b in 0..n {
                if add[a][b] != add[b][a] {
                    return law("additive commutativity", format!("a={a}, b={b}"));
                }
                if mul[a][b] != mul[b][a] {
                    return law("multiplicative commutativity", format!("a={a}, b={b}"));
                }
                for c in 0..n {
                    if add[add[a][b]][c] != add[a][add[b][c]] {
                        return law("additive associativity", format!("a={a}, b={b}, c={c}"));
                    }
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return law("multiplicative associativity", format!("a={a}, b={b}, c={c}"));
                    }
                    if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]] {
                        return law("distributivity", format!("a={a}, b={b}, c={c}"));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(RingError::Labels),
            Some(l) => l,
            None => (0..n).map(|i| format!("#{i}")).collect(),
        };
        Ok(FiniteRing { name: name.into(), add, mul, zero, one, neg, labels })
    }

    pub fn from_ring_tables(t: &RingTables) -> Result<Self, RingError> {
        Self::from_tables(
            t.name.clone().unwrap_or_else(|| "R".to_string()),
            t.add.clone(),
            t.mul.clone(),
            t.labels.clone(),
        )
    }

    pub fn to_ring_tables(&self) -> RingTables {
        RingTables {
            name: Some(self.name.clone()),
            add: self.add.clone(),
            mul: self.mul.clone(),
            labels: Some(self.labels.clone()),
        }
    }

    /// Built without validation; callers guarantee the axioms.
    fn trusted(name: String, add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>, labels: Vec<String>) -> Self {
        let n = add.len();
        let zero = (0..n).find(|&z| (0..n).all(|a| add[z][a] == a)).expect("zero");
        let one = (0..n).find(|&u| (0..n).all(|a| mul[u][a] == a)).expect("one");
        let neg = (0..n).map(|a| (0..n).find(|&b| add[a][b] == zero).expect("negatives")).collect();
        FiniteRing { name, add, mul, zero, one, neg, labels }
    }

    /// `Z/n`, elements labelled by their residues.
    pub fn zmod(n: usize) -> Self {
        assert!((1..=MAX_RING_SIZE).contains(&n), "Z/n needs 1 ≤ n ≤ {MAX_RING_SIZE}");
        let add = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a * b) % n).collect()).collect();
        Self::trusted(format!("Z/{n}"), add, mul, (0..n).map(|a| a.to_string()).collect())
    }

    /// The field with four elements `0, 1, w, w+1` where `w² = w + 1`.
    pub fn f4() -> Self {
        // encode a + b·w as a | b << 1
        let mul1 = |x: usize, y: usize| {
            let (a, b) = (x & 1, x >> 1);
            let (c, d) = (y & 1, y >> 1);
            // (a + bw)(c + dw) = ac + (ad + bc)w + bd(w + 1)
            let constant = (a * c + b * d) % 2;
            let linear = (a * d + b * c + b * d) % 2;
            constant | linear << 1
        };
        let add = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        let mul = (0..4).map(|x| (0..4).map(|y| mul1(x, y)).collect()).collect();
        let labels = ["0", "1", "w", "w+1"].map(String::from).to_vec();
        Self::trusted("F4".to_string(), add, mul, labels)
    }

    /// `self × other`; the pair `(a, b)` has index `a·|other| + b`.
    pub fn product(&self, other: &FiniteRing) -> Self {
        let m = other.size();
        let n = self.size() * m;
        assert!(n <= MAX_RING_SIZE, "product ring too large");
        let split = |x: usize| (x / m, x % m);
        let table = |f: &dyn Fn(usize, usize, usize, usize) -> (usize, usize)| -> Vec<Vec<usize>> {
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let ((a, b), (c, d)) = (split(x), split(y));
                            let (p, q) = f(a, b, c, d);
                            p * m + q
                        })
                        .collect()
                })
                .collect()
        };
        let add = table(&|a, b, c, d| (self.add[a][c], other.add[b][d]));
        let mul = table(&|a, b, c, d| (self.mul[a][c], other.mul[b][d]));
        let labels = (0..n)
            .map(|x| {
                let (a, b) = split(x);
                let left = self.labels[a].trim_start_matches('(').trim_end_matches(')');
                format!("({},{})", left, other.labels[b])
            })
            .collect();
        Self::trusted(format!("{}x{}", self.name, other.name), add, mul, labels)
    }

    /// `F₂^k`, coordinates read left to right.
    pub fn f2_power(k: usize) -> Self {
        assert!(k >= 1);
        let mut ring = Self::zmod(2);
        for _ in 1..k {
            ring = ring.product(&Self::zmod(2));
        }
        ring.name = format!("F2^{k}");
        ring
    }

    /// `Z/n`, `F2`, `F4`, `F2xF2`, `F2^k`.
    pub fn builtin(name: &str) -> Result<Self, RingError> {
        let name = name.trim();
        let unknown = || RingError::UnknownBuiltin(name.to_string());
        if let Some(n) = name.strip_prefix("Z/") {
            let n: usize = n.parse().map_err(|_| unknown())?;
            if n == 0 || n > MAX_RING_SIZE {
                return Err(unknown());
            }
            return Ok(Self::zmod(n));
        }
        if let Some(k) = name.strip_prefix("F2^") {
            let k: usize = k.parse().map_err(|_| unknown())?;
            if k == 0 || k > 8 {
                return Err(unknown());
            }
            return Ok(Self::f2_power(k));
        }
        match name {
            "F2" => Ok(Self::zmod(2)),
            "F4" => Ok(Self::f4()),
            "F2xF2" => {
                let mut r = Self::f2_power(2);
                r.name = "F2xF2".to_string();
                Ok(r)
            }
            _ => Err(unknown()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.add.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size() == 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: usize, n: usize) -> usize {
        (0..n).fold(self.one, |acc, _| self.mul(acc, a))
    }

    /// `n·1` for an integer `n`.
    pub fn integer(&self, n: i64) -> usize {
        let unit = if n < 0 { self.neg(self.one) } else { self.one };
        (0..n.unsigned_abs()).fold(self.zero, |acc, _| self.add(acc, unit))
    }

    pub fn add_table(&self) -> &[Vec<usize>] {
        &self.add
    }

    pub fn mul_table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parse_label(&self, label: &str) -> Option<usize> {
        let label = label.trim();
        self.labels.iter().position(|l| l == label)
    }

    /// Smallest `n ≥ 1` with `aⁿ = 0`, if any.
    pub fn nilpotency_index(&self, a: usize) -> Option<usize> {
        let mut power = a;
        for n in 1..=self.size() {
            if power == self.zero {
                return Some(n);
            }
            power = self.mul(power, a);
        }
        None
    }

    pub fn is_nilpotent(&self, a: usize) -> bool {
        self.nilpotency_index(a).is_some()
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.elements().any(|b| self.mul(a, b) == self.one)
    }

    pub fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.size())
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert_range(..);
        s
    }

    pub fn zero_ideal(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        s.insert(self.zero);
        s
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated(&self, gens: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut set = self.zero_ideal();
        let mut multiples = Vec::new();
        for g in gens {
            for r in self.elements() {
                let m = self.mul(r, g);
                if !set.put(m) {
                    multiples.push(m);
                }
            }
        }
        self.additive_closure(set, multiples)
    }

    /// Closes a set containing 0 under addition; `pending` lists members not yet combined.
    fn additive_closure(&self, mut set: FixedBitSet, mut pending: Vec<usize>) -> FixedBitSet {
        while let Some(a) = pending.pop() {
            let members: Vec<usize> = set.ones().collect();
            for b in members {
                let s = self.add(a, b);
                if !set.put(s) {
                    pending.push(s);
                }
            }
        }
        set
    }

    pub fn is_ideal(&self, set: &FixedBitSet) -> bool {
        if !set.contains(self.zero) {
            return false;
        }
        set.ones().all(|a| {
            set.ones().all(|b| set.contains(self.add(a, b)))
                && self.elements().all(|r| set.contains(self.mul(r, a)))
        })
    }

    /// Every ideal, sorted by size then member list.
    pub fn ideals(&self) -> Vec<FixedBitSet> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let zero = self.zero_ideal();
        let mut stack = vec![zero];
        while let Some(ideal) = stack.pop() {
            if !found.insert(ideal.ones().collect()) {
                continue;
            }
            for r in self.elements().filter(|&r| !ideal.contains(r)) {
                let bigger = self.ideal_generated(ideal.ones().chain([r]));
                if !found.contains(&bigger.ones().collect::<Vec<_>>()) {
                    stack.push(bigger);
                }
            }
        }
        let mut ideals: Vec<Vec<usize>> = found.into_iter().collect();
        ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        ideals.into_iter().map(|m| self.set_of(m)).collect()
    }

    pub fn set_of(&self, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
        let mut s = self.empty_set();
        s.extend(members);
        s
    }

    /// `{a : aⁿ ∈ I for some n ≥ 1}`.
    pub fn radical(&self, ideal: &FixedBitSet) -> FixedBitSet {
        self.set_of(self.elements().filter(|&a| {
            let mut power = a;
            for _ in 0..=self.size() {
                if ideal.contains(power) {
                    return true;
                }
                power = self.mul(power, a);
            }
            false
        }))
    }

    pub fn nilradical(&self) -> FixedBitSet {
        self.radical(&self.zero_ideal())
    }

    pub fn is_prime_ideal(&self, ideal: &FixedBitSet) -> bool {
        !ideal.contains(self.one)
            && self.elements().all(|a| {
                ideal.contains(a)
                    || self.elements().all(|b| ideal.contains(b) || !ideal.contains(self.mul(a, b)))
            })
    }

    /// `R/I` with the projection; each coset is represented by its smallest member.
    pub fn quotient(&self, ideal: &FixedBitSet) -> (FiniteRing, Vec<usize>) {
        let mut rep_of = vec![usize::MAX; self.size()];
        let mut reps = Vec::new();
        for a in self.elements() {
            if rep_of[a] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(a);
            for i in ideal.ones() {
                rep_of[self.add(a, i)] = idx;
            }
        }
        let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            reps.iter().map(|&a| reps.iter().map(|&b| rep_of[op(a, b)]).collect()).collect()
        };
        let add = table(&|a, b| self.add(a, b));
        let mul = table(&|a, b| self.mul(a, b));
        let labels = reps.iter().map(|&a| format!("[{}]", self.labels[a])).collect();
        (Self::trusted(format!("{}/I", self.name), add, mul, labels), rep_of)
    }

    /// Number of elements of the localization `S⁻¹R`, built directly as classes of pairs
    /// `(r, s)` under `(r, s) ~ (r', s')` iff `u(rs' − r's) = 0` for some `u ∈ S`.
    /// `s` is closed multiplicatively first.
    pub fn localization_size(&self, s: &[usize]) -> usize {
        let closed = self.multiplicative_closure(s);
        let denominators: Vec<usize> = closed.ones().collect();
        let pairs: Vec<(usize, usize)> = self
            .elements()
            .flat_map(|r| denominators.iter().map(move |&d| (r, d)))
            .collect();
        let related = |(r, s): (usize, usize), (r2, s2): (usize, usize)| {
            let diff = self.sub(self.mul(r, s2), self.mul(r2, s));
            denominators.iter().any(|&u| self.mul(u, diff) == self.zero)
        };
        let mut class_reps: Vec<(usize, usize)> = Vec::new();
        for &p in &pairs {
            if !class_reps.iter().any(|&q| related(p, q)) {
                class_reps.push(p);
            }
        }
        class_reps.len()
    }

    /// The multiplicative monoid generated by `gens` (always contains 1).
    pub fn multiplicative_closure(&self, gens: &[usize]) -> FixedBitSet {
        let mut set = self.set_of([self.one]);
        let mut pending = vec![self.one];
        while let Some(a) = pending.pop() {
            for &g in gens {
                let p = self.mul(a, g);
                if !set.put(p) {
                    pending.push(p);
                }
            }
        }
        set
    }

    /// Checks that `f` is a bijective ring endomorphism.
    pub fn check_automorphism(&self, f: &[usize]) -> Result<(), RingError> {
        let n = self.size();
        let bad = |msg: String| Err(RingError::NotAutomorphism(msg));
        if f.len() != n || f.iter().any(|&v| v >= n) {
            return bad("wrong length or entry out of range".to_string());
        }
        let mut seen = self.empty_set();
        for &v in f {
            if seen.put(v) {
                return bad("not injective".to_string());
            }
        }
        if f[self.one] != self.one {
            return bad("1 is not fixed".to_string());
        }
        for a in 0..n {
            for b in 0..n {
                if f[self.add(a, b)] != self.add(f[a], f[b]) {
                    return bad(format!("not additive at ({a}, {b})"));
                }
                if f[self.mul(a, b)] != self.mul(f[a], f[b]) {
                    return bad(format!("not multiplicative at ({a}, {b})"));
                }
            }
        }
        Ok(())
    }

    /// Restriction of the tables to a subring listed by sorted member indices.
    pub fn subring(&self, name: impl Into<String>, members: &[usize]) -> FiniteRing {
        let index = |v: usize| members.binary_search(&v).expect("subring is closed");
        let table = |op: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            members.iter().map(|&a| members.iter().map(|&b| index(op(a, b))).collect()).collect()
        };
        let add = table(&|a, b| self.add(a, b));
        let mul = table(&|a, b| self.mul(a, b));
        let labels = members.iter().map(|&a| self.labels[a].clone()).collect();
        Self::trusted(name.into(), add, mul, labels)
    }

    /// The ring with one element.
    pub fn zero_ring() -> Self {
        Self::trusted("0".to_string(), vec![vec![0]], vec![vec![0]], vec!["0".to_string()])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn validated(r: &FiniteRing) -> FiniteRing {
        FiniteRing::from_tables(r.name(), r.add.clone(), r.mul.clone(), Some(r.labels.clone()))
            .expect("builtin rings satisfy the axioms")
    }

    #[test]
    fn builtins_are_rings() {
        for name in ["Z/1", "Z/4", "Z/8", "Z/6", "F2", "F4", "F2xF2", "F2^3"] {
            let r = FiniteRing::builtin(name).unwrap();
            assert_eq!(validated(&r), r, "{name}");
        }
        assert!(FiniteRing::builtin("Q").is_err());
    }

    #[test]
    fn f4_is_a_field() {
        let f = FiniteRing::f4();
        assert!(f.elements().filter(|&a| a != f.zero()).all(|a| f.is_unit(a)));
        let w = f.parse_label("w").unwrap();
        assert_eq!(f.mul(w, w), f.parse_label("w+1").unwrap());
    }

    #[test]
    fn ideals_of_small_rings() {
        assert_eq!(FiniteRing::zmod(4).ideals().len(), 3);
        assert_eq!(FiniteRing::zmod(8).ideals().len(), 4);
        assert_eq!(FiniteRing::zmod(6).ideals().len(), 4);
        assert_eq!(FiniteRing::f4().ideals().len(), 2);
        assert_eq!(FiniteRing::f2_power(2).ideals().len(), 4);
        assert_eq!(FiniteRing::f2_power(3).ideals().len(), 8);
        assert_eq!(FiniteRing::zero_ring().ideals().len(), 1);
        for r in [FiniteRing::zmod(12), FiniteRing::f2_power(3)] {
            for i in r.ideals() {
                assert!(r.is_ideal(&i));
            }
        }
    }

    #[test]
    fn nilradicals() {
        let z4 = FiniteRing::zmod(4);
        assert_eq!(z4.nilradical().ones().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(z4.nilpotency_index(2), Some(2));
        assert_eq!(FiniteRing::zmod(8).nilpotency_index(2), Some(3));
        assert!(FiniteRing::f2_power(2).nilradical().ones().eq([0]));
    }

    #[test]
    fn quotient_of_z4() {
        let z4 = FiniteRing::zmod(4);
        let (q, proj) = z4.quotient(&z4.set_of([0, 2]));
        assert_eq!(q.size(), 2);
        assert_eq!(proj, vec![0, 1, 0, 1]);
    }

    #[test]
    fn localization_sizes() {
        let z4 = FiniteRing::zmod(4);
        assert_eq!(z4.localization_size(&[2]), 1);
        assert_eq!(z4.localization_size(&[3]), 4);
        let f2f2 = FiniteRing::f2_power(2);
        let e = f2f2.parse_label("(1,0)").unwrap();
        assert_eq!(f2f2.localization_size(&[e]), 2);
        let z6 = FiniteRing::zmod(6);
        assert_eq!(z6.localization_size(&[2]), 3);
    }

    #[test]
    fn rejects_non_rings() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteRing::from_tables("bad", add, mul, None),
            Err(RingError::NoIdentity(_)) | Err(RingError::Law { .. })
        ));
    }

    #[test]
    fn automorphisms() {
        let f4 = FiniteRing::f4();
        assert!(f4.check_automorphism(&[0, 1, 3, 2]).is_ok());
        assert!(f4.check_automorphism(&[0, 1, 2, 2]).is_err());
        let f2f2 = FiniteRing::f2_power(2);
        assert!(f2f2.check_automorphism(&[0, 2, 1, 3]).is_ok());
    }
}
