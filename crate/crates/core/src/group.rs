//! Finite groups given by multiplication tables, with a cached subgroup lattice.
//!
//! Elements are indices `0..n` with `0` the identity. Subgroups are stored once,
//! in a fixed order (by order, then lexicographically by sorted member list), and
//! referred to everywhere else by [`SubgroupId`].

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest group order supported; subgroups are stored as `u64` bitmasks.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("group order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("row {row} of the multiplication table has length {len}, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    OutOfRange { row: usize, col: usize, value: usize },
    #[error("element 0 is not a two-sided identity")]
    IdentityNotZero,
    #[error("multiplication is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("unknown builtin group {0:?}")]
    UnknownBuiltin(String),
    #[error("permutation {0} is not a bijection")]
    BadPermutation(usize),
    #[error("the permutations are not closed under composition")]
    NotClosed,
}

/// Index of a subgroup in its group's cached lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupId(pub usize);

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: u64,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.mask >> g & 1 == 1
    }

    fn from_mask(mask: u64) -> Self {
        let members = (0..MAX_ORDER).filter(|&i| mask >> i & 1 == 1).collect();
        Subgroup { members, mask }
    }
}

/// File form of a group: a builtin name or an explicit multiplication table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin {
        builtin: String,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default)]
        name: Option<String>,
    },
}

impl GroupSpec {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Builtin { builtin } => FiniteGroup::builtin(builtin),
            GroupSpec::Table { table, name } => {
                FiniteGroup::from_table(name.clone().unwrap_or_else(|| "G".to_string()), table.clone())
            }
        }
    }

    /// The builtin name when it reproduces the same table, otherwise the table itself.
    pub fn describe(group: &FiniteGroup) -> Self {
        match FiniteGroup::builtin(group.name()) {
            Ok(b) if b.table() == group.table() => GroupSpec::Builtin { builtin: group.name().to_string() },
            _ => GroupSpec::Table { table: group.table().to_vec(), name: Some(group.name().to_string()) },
        }
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    subgroups: Vec<Subgroup>,
    by_mask: HashMap<u64, SubgroupId>,
    // conj[g][h] = g H g^-1
    conj: Vec<Vec<SubgroupId>>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order())
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table, validating the group axioms.
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = mul.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        for (row, r) in mul.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: n });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::OutOfRange { row, col, value });
            }
        }
        if (0..n).any(|a| mul[0][a] != a || mul[a][0] != a) {
            return Err(GroupError::IdentityNotZero);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inv = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| mul[a][b] == 0 && mul[b][a] == 0) {
                Some(b) => inv.push(b),
                None => return Err(GroupError::NoInverse(a)),
            }
        }
        let mut group = FiniteGroup {
            name: name.into(),
            mul,
            inv,
            subgroups: Vec::new(),
            by_mask: HashMap::new(),
            conj: Vec::new(),
        };
        group.build_lattice();
        Ok(group)
    }

    /// Builds a group from permutations of `0..m`; the first one must be the identity.
    /// The product `a * b` is the composite `a ∘ b` (apply `b` first).
    pub fn from_permutations(
        name: impl Into<String>,
        perms: &[Vec<usize>],
    ) -> Result<Self, GroupError> {
        for (i, p) in perms.iter().enumerate() {
            let mut seen = vec![false; p.len()];
            for &x in p {
                if x >= p.len() || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::BadPermutation(i));
                }
            }
        }
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut table = vec![vec![0; perms.len()]; perms.len()];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                let composite: Vec<usize> = pb.iter().map(|&x| pa[x]).collect();
                table[a][b] = *index.get(composite.as_slice()).ok_or(GroupError::NotClosed)?;
            }
        }
        Self::from_table(name, table)
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(format!("C{n}"), table).expect("cyclic group table is valid")
    }

    /// S₃ as permutations of {0,1,2}: e, (01), (02), (12), (012), (021).
    pub fn symmetric3() -> Self {
        Self::from_permutations("S3", &Self::s3_permutations()).expect("S3 is a group")
    }

    /// The permutations of {0,1,2} underlying [`FiniteGroup::symmetric3`], in element order.
    pub fn s3_permutations() -> Vec<Vec<usize>> {
        vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![2, 1, 0],
            vec![0, 2, 1],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ]
    }

    pub fn klein_four() -> Self {
        let table = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        Self::from_table("C2xC2", table).expect("Klein four table is valid")
    }

    /// `"C<n>"`, `"S3"` or `"C2xC2"`.
    pub fn builtin(name: &str) -> Result<Self, GroupError> {
        match name {
            "S3" => Ok(Self::symmetric3()),
            "C2xC2" | "V4" => Ok(Self::klein_four()),
            _ => name
                .strip_prefix('C')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=MAX_ORDER).contains(&n))
                .map(Self::cyclic)
                .ok_or_else(|| GroupError::UnknownBuiltin(name.to_string())),
        }
    }

    fn build_lattice(&mut self) {
        let n = self.order();
        let mut found: BTreeSet<u64> = BTreeSet::new();
        let cyclic: Vec<u64> = (0..n).map(|g| self.generate(1 << g)).collect();
        let mut frontier: Vec<u64> = Vec::new();
        for &c in &cyclic {
            if found.insert(c) {
                frontier.push(c);
            }
        }
        while let Some(h) = frontier.pop() {
            for &c in &cyclic {
                if h & c == c {
                    continue;
                }
                let j = self.generate(h | c);
                if found.insert(j) {
                    frontier.push(j);
                }
            }
        }
        let mut subgroups: Vec<Subgroup> = found.into_iter().map(Subgroup::from_mask).collect();
        subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
        self.by_mask = subgroups.iter().enumerate().map(|(i, s)| (s.mask, SubgroupId(i))).collect();
        self.subgroups = subgroups;
        self.conj = (0..n)
            .map(|g| {
                self.subgroups
                    .iter()
                    .map(|h| {
                        let mask = h
                            .members
                            .iter()
                            .fold(0u64, |m, &x| m | 1 << self.mul(self.mul(g, x), self.inv(g)));
                        self.by_mask[&mask]
                    })
                    .collect()
            })
            .collect();
    }

    /// Closure of a set of elements under multiplication, as a bitmask.
    pub fn generate(&self, mask: u64) -> u64 {
        let mut closed = mask | 1;
        loop {
            let members: Vec<usize> = (0..self.order()).filter(|&i| closed >> i & 1 == 1).collect();
            let mut next = closed;
            for &a in &members {
                for &b in &members {
                    next |= 1 << self.mul(a, b);
                }
            }
            if next == closed {
                return closed;
            }
            closed = next;
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn subgroups(&self) -> impl ExactSizeIterator<Item = SubgroupId> + Clone {
        (0..self.subgroups.len()).map(SubgroupId)
    }

    pub fn subgroup_count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn subgroup(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id.0]
    }

    pub fn trivial(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn whole(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() - 1)
    }

    pub fn subgroup_by_mask(&self, mask: u64) -> Option<SubgroupId> {
        self.by_mask.get(&mask).copied()
    }

    pub fn subgroup_by_members(&self, members: &[usize]) -> Option<SubgroupId> {
        if members.iter().any(|&m| m >= self.order()) {
            return None;
        }
        self.subgroup_by_mask(members.iter().fold(0, |m, &x| m | 1 << x))
    }

    /// `h ≤ k`.
    pub fn is_subgroup(&self, h: SubgroupId, k: SubgroupId) -> bool {
        let (h, k) = (self.subgroup(h).mask, self.subgroup(k).mask);
        h & k == h
    }

    /// All subgroups of `k`, in lattice order.
    pub fn subgroups_of(&self, k: SubgroupId) -> Vec<SubgroupId> {
        self.subgroups().filter(|&h| self.is_subgroup(h, k)).collect()
    }

    /// All subgroups containing `h`, in lattice order.
    pub fn supergroups_of(&self, h: SubgroupId) -> Vec<SubgroupId> {
        self.subgroups().filter(|&k| self.is_subgroup(h, k)).collect()
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: usize, h: SubgroupId) -> SubgroupId {
        self.conj[g][h.0]
    }

    pub fn intersect(&self, h: SubgroupId, k: SubgroupId) -> SubgroupId {
        self.by_mask[&(self.subgroup(h).mask & self.subgroup(k).mask)]
    }

    pub fn index(&self, h: SubgroupId, k: SubgroupId) -> usize {
        debug_assert!(self.is_subgroup(h, k));
        self.subgroup(k).order() / self.subgroup(h).order()
    }

    pub fn normalizer(&self, h: SubgroupId) -> Vec<usize> {
        self.elements().filter(|&g| self.conjugate(g, h) == h).collect()
    }

    /// Representatives (smallest element) of the left cosets `gH` inside `k`, sorted.
    pub fn left_coset_reps(&self, k: SubgroupId, h: SubgroupId) -> Vec<usize> {
        let hs = self.subgroup(h);
        let mut covered = 0u64;
        let mut reps = Vec::new();
        for &g in self.subgroup(k).members() {
            if covered >> g & 1 == 1 {
                continue;
            }
            reps.push(g);
            for &x in hs.members() {
                covered |= 1 << self.mul(g, x);
            }
        }
        reps
    }

    /// Representatives (smallest element) of the double cosets `H γ K` in `G`.
    pub fn double_coset_reps(&self, h: SubgroupId, k: SubgroupId) -> Vec<usize> {
        self.double_coset_reps_within(self.whole(), h, k)
    }

    /// Representatives of the double cosets `H γ K` inside an ambient subgroup containing both.
    pub fn double_coset_reps_within(
        &self,
        ambient: SubgroupId,
        h: SubgroupId,
        k: SubgroupId,
    ) -> Vec<usize> {
        let (hs, ks) = (self.subgroup(h), self.subgroup(k));
        let mut covered = 0u64;
        let mut reps = Vec::new();
        for &g in self.subgroup(ambient).members() {
            if covered >> g & 1 == 1 {
                continue;
            }
            reps.push(g);
            for &x in hs.members() {
                for &y in ks.members() {
                    covered |= 1 << self.mul(self.mul(x, g), y);
                }
            }
        }
        reps
    }

    /// Smallest-index representative of the `k`-conjugacy class of `h` (`h` need not lie in `k`).
    pub fn conjugacy_rep_under(&self, k: SubgroupId, h: SubgroupId) -> SubgroupId {
        self.subgroup(k)
            .members()
            .iter()
            .map(|&g| self.conjugate(g, h))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Human-readable label: `e`, the group name for the whole group, or the member set.
    pub fn subgroup_label(&self, h: SubgroupId) -> String {
        if h == self.trivial() {
            "e".to_string()
        } else if h == self.whole() {
            self.name.clone()
        } else {
            let members: Vec<String> =
                self.subgroup(h).members().iter().map(|m| m.to_string()).collect();
            format!("{{{}}}", members.join(","))
        }
    }

    /// Parses `e`, `G`, the group name, `#k`, or a member set like `{0,3}`.
    pub fn parse_subgroup(&self, label: &str) -> Option<SubgroupId> {
        let label = label.trim();
        if label == "e" || label == "1" {
            return Some(self.trivial());
        }
        if label == "G" || label == self.name {
            return Some(self.whole());
        }
        if let Some(idx) = label.strip_prefix('#') {
            return idx.parse().ok().filter(|&i| i < self.subgroup_count()).map(SubgroupId);
        }
        let inner = label.strip_prefix('{')?.strip_suffix('}')?;
        let members: Option<Vec<usize>> =
            inner.split(',').filter(|s| !s.trim().is_empty()).map(|s| s.trim().parse().ok()).collect();
        self.subgroup_by_members(&members?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
        let n = g.order();
        (1u64..1 << n)
            .filter(|&m| m & 1 == 1)
            .filter(|&m| {
                (0..n).filter(|&a| m >> a & 1 == 1).all(|a| {
                    m >> g.inv(a) & 1 == 1
                        && (0..n).filter(|&b| m >> b & 1 == 1).all(|b| m >> g.mul(a, b) & 1 == 1)
                })
            })
            .count()
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(FiniteGroup::cyclic(2).subgroup_count(), 2);
        assert_eq!(FiniteGroup::cyclic(4).subgroup_count(), 3);
        let s3 = FiniteGroup::symmetric3();
        assert_eq!(s3.subgroup_count(), 6);
        assert_eq!(brute_force_subgroup_count(&s3), 6);
        let orders: Vec<usize> = s3.subgroups().map(|h| s3.subgroup(h).order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        let v = FiniteGroup::klein_four();
        assert_eq!(v.subgroup_count(), brute_force_subgroup_count(&v));
        for n in 1..=12 {
            let c = FiniteGroup::cyclic(n);
            let divisors = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(c.subgroup_count(), divisors, "C{n}");
        }
    }

    #[test]
    fn c4_is_a_chain() {
        let c4 = FiniteGroup::cyclic(4);
        let ids: Vec<_> = c4.subgroups().collect();
        assert!(c4.is_subgroup(ids[0], ids[1]) && c4.is_subgroup(ids[1], ids[2]));
        assert_eq!(c4.subgroup(ids[1]).members(), &[0, 2]);
    }

    #[test]
    fn lattice_closed_under_conjugation() {
        let s3 = FiniteGroup::symmetric3();
        for g in s3.elements() {
            for h in s3.subgroups() {
                let c = s3.conjugate(g, h);
                assert_eq!(s3.subgroup(c).order(), s3.subgroup(h).order());
            }
        }
        // the three order-2 subgroups are conjugate
        let twos: Vec<_> = s3.subgroups().filter(|&h| s3.subgroup(h).order() == 2).collect();
        let rep = s3.conjugacy_rep_under(s3.whole(), twos[2]);
        assert_eq!(rep, twos[0]);
    }

    #[test]
    fn double_cosets() {
        let c2 = FiniteGroup::cyclic(2);
        assert_eq!(c2.double_coset_reps(c2.whole(), c2.whole()), vec![0]);
        assert_eq!(c2.double_coset_reps(c2.trivial(), c2.trivial()), vec![0, 1]);
        let s3 = FiniteGroup::symmetric3();
        let t = s3.subgroup_by_members(&[0, 1]).unwrap();
        let reps = s3.double_coset_reps(t, t);
        assert_eq!(reps.len(), 2);
        // brute-force partition check
        let mut seen = vec![0usize; 6];
        for &r in &reps {
            let mut set = BTreeSet::new();
            for &x in s3.subgroup(t).members() {
                for &y in s3.subgroup(t).members() {
                    set.insert(s3.mul(s3.mul(x, r), y));
                }
            }
            for g in set {
                seen[g] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table("x", vec![]), Err(GroupError::Empty));
        assert_eq!(
            FiniteGroup::from_table("x", vec![vec![1, 0], vec![0, 1]]),
            Err(GroupError::IdentityNotZero)
        );
        assert!(matches!(
            FiniteGroup::from_table("x", vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]]),
            Err(GroupError::NotAssociative(..)) | Err(GroupError::NoInverse(_))
        ));
        assert!(FiniteGroup::builtin("Q8").is_err());
    }

    #[test]
    fn subgroup_labels_round_trip() {
        let s3 = FiniteGroup::symmetric3();
        for h in s3.subgroups() {
            assert_eq!(s3.parse_subgroup(&s3.subgroup_label(h)), Some(h));
            assert_eq!(s3.parse_subgroup(&h.to_string()), Some(h));
        }
        assert_eq!(s3.parse_subgroup("G"), Some(s3.whole()));
    }
}
