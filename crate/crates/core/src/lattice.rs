//! The finite lattice carrier.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::set::ElemSet;

/// Hard upper bound on carrier size. Element sets are single `u64` words.
pub const MAX_ELEMENTS: usize = 64;

/// Environment variable that lowers the element cap.
pub const MAX_N_ENV: &str = "LATKIT_MAX_N";

/// Effective element cap: [`MAX_ELEMENTS`], lowered by `LATKIT_MAX_N` when it
/// holds a smaller positive integer. Larger or malformed values are ignored.
pub fn element_cap() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&v| v >= 1)
        .map_or(MAX_ELEMENTS, |v| v.min(MAX_ELEMENTS))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    Meet,
    Join,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::Meet => "greatest lower bound",
            BoundKind::Join => "least upper bound",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("syntax error at line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("order relation has a cycle through `{0}`")]
    Cycle(String),
    #[error("not a lattice: `{x}` and `{y}` have no unique {kind}")]
    NotALattice { x: String, y: String, kind: BoundKind },
    #[error("no minimum element")]
    NoBottom,
    #[error("lattice has no elements")]
    Empty,
    #[error("{n} elements exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
}

impl LatticeError {
    pub(crate) fn syntax(line: usize, message: impl Into<String>) -> Self {
        LatticeError::Syntax {
            line,
            message: message.into(),
        }
    }
}

/// Identity of a constructed lattice. Ideals and filters remember the lattice
/// they were computed in so mixing sets from different lattices is caught.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeId(u64);

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

impl LatticeId {
    fn fresh() -> Self {
        LatticeId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// A validated finite lattice with a minimum element.
///
/// Elements are indices `0..n` in declaration order; that order is the
/// tie-break for every "first witness" search in the crate. The order
/// relation is stored as principal down-sets and up-sets, and meet and join
/// are precomputed tables.
#[derive(Clone)]
pub struct FiniteLattice {
    id: LatticeId,
    name: String,
    labels: Vec<String>,
    down: Vec<ElemSet>,
    up: Vec<ElemSet>,
    meet: Vec<u8>,
    join: Vec<u8>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.name)
            .field("labels", &self.labels)
            .field("covers", &self.cover_pairs())
            .finish()
    }
}

impl FiniteLattice {
    /// Builds a lattice from labels and a generating relation. Each pair
    /// `(x, y)` asserts `x < y`; the order is the reflexive-transitive closure.
    pub fn from_relation(
        name: impl Into<String>,
        labels: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        let n = labels.len();
        if n == 0 {
            return Err(LatticeError::Empty);
        }
        let cap = element_cap();
        if n > cap {
            return Err(LatticeError::TooLarge { n, max: cap });
        }

        // up[x] = { y : x <= y }
        let mut up: Vec<ElemSet> = (0..n).map(ElemSet::singleton).collect();
        for &(x, y) in pairs {
            assert!(x < n && y < n, "relation pair out of range");
            if x == y {
                return Err(LatticeError::Cycle(labels[x].clone()));
            }
            up[x].insert(y);
        }
        // Warshall closure over bitset rows.
        for k in 0..n {
            for i in 0..n {
                if up[i].contains(k) {
                    up[i] = up[i] | up[k];
                }
            }
        }
        let mut down = vec![ElemSet::EMPTY; n];
        for (x, row) in up.iter().enumerate() {
            for y in row.iter() {
                down[y].insert(x);
            }
        }
        for x in 0..n {
            let both = (up[x] & down[x]).without(x);
            if let Some(y) = both.min() {
                let at = x.min(y);
                return Err(LatticeError::Cycle(labels[at].clone()));
            }
        }

        let all = ElemSet::full(n);
        let bottom = (0..n).find(|&x| up[x] == all).ok_or(LatticeError::NoBottom)?;

        let mut meet = vec![0u8; n * n];
        let mut join = vec![0u8; n * n];
        for x in 0..n {
            for y in x..n {
                let lower = down[x] & down[y];
                let glb = lower.iter().find(|&g| down[g] == lower).ok_or_else(|| {
                    LatticeError::NotALattice {
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                        kind: BoundKind::Meet,
                    }
                })?;
                let upper = up[x] & up[y];
                let lub = upper.iter().find(|&g| up[g] == upper).ok_or_else(|| {
                    LatticeError::NotALattice {
                        x: labels[x].clone(),
                        y: labels[y].clone(),
                        kind: BoundKind::Join,
                    }
                })?;
                meet[x * n + y] = glb as u8;
                meet[y * n + x] = glb as u8;
                join[x * n + y] = lub as u8;
                join[y * n + x] = lub as u8;
            }
        }
        let top = (0..n)
            .find(|&x| down[x] == all)
            .expect("a finite lattice has a top");

        Ok(FiniteLattice {
            id: LatticeId::fresh(),
            name: name.into(),
            labels,
            down,
            up,
            meet,
            join,
            bottom,
            top,
        })
    }

    pub fn id(&self) -> LatticeId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let mut l = self.clone();
        l.name = name.into();
        l
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.n() == 1
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n() + y] as usize
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n() + y] as usize
    }

    /// Principal down-set `(x] = { y : y <= x }`.
    pub fn down(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    /// Principal up-set `[x) = { y : y >= x }`.
    pub fn up(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.n())
    }

    pub fn nonzero(&self) -> ElemSet {
        self.all().without(self.bottom)
    }

    pub fn is_zero(&self, x: usize) -> bool {
        x == self.bottom
    }

    /// Meet of a set of elements; the top for the empty set.
    pub fn meet_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// Join of a set of elements; the bottom for the empty set.
    pub fn join_all(&self, set: ElemSet) -> usize {
        set.iter().fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Whether every two members of `set` are comparable.
    pub fn is_chain(&self, set: ElemSet) -> bool {
        set.iter()
            .all(|x| set.is_subset(self.up[x] | self.down[x]))
    }

    /// Downward closure of a set.
    pub fn down_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc | self.down[x])
    }

    /// Upward closure of a set.
    pub fn up_closure(&self, set: ElemSet) -> ElemSet {
        set.iter().fold(ElemSet::EMPTY, |acc, x| acc | self.up[x])
    }

    pub fn is_down_closed(&self, set: ElemSet) -> bool {
        self.down_closure(set) == set
    }

    /// Hasse diagram edges `(x, y)` with `y` covering `x`, sorted by index.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for x in 0..n {
            let above = self.up[x].without(x);
            for y in above.iter() {
                let between = above & self.down[y].without(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements covering the bottom.
    pub fn atoms(&self) -> ElemSet {
        let nz = self.nonzero();
        nz.iter()
            .filter(|&x| (self.down[x] & nz) == ElemSet::singleton(x))
            .collect()
    }

    /// Nonzero elements with exactly one lower cover.
    pub fn join_irreducibles(&self) -> ElemSet {
        self.nonzero()
            .iter()
            .filter(|&x| {
                let strictly_below = self.down[x].without(x);
                let lower_covers = strictly_below
                    .iter()
                    .filter(|&y| (self.up[y] & strictly_below) == ElemSet::singleton(y))
                    .count();
                lower_covers == 1
            })
            .collect()
    }

    /// Relabels elements by a permutation: old element `i` becomes new index
    /// `perm[i]`. The result is an isomorphic lattice with a new identity.
    pub fn permuted(&self, perm: &[usize]) -> FiniteLattice {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut labels = vec![String::new(); n];
        for (old, &new) in perm.iter().enumerate() {
            labels[new] = self.labels[old].clone();
        }
        let pairs: Vec<(usize, usize)> = self
            .cover_pairs()
            .into_iter()
            .map(|(x, y)| (perm[x], perm[y]))
            .collect();
        FiniteLattice::from_relation(self.name.clone(), labels, &pairs)
            .expect("relabeling preserves lattice structure")
    }

    /// Labels of a set's members in element order, e.g. `{0, a}`.
    pub fn format_set(&self, set: ElemSet) -> String {
        let parts: Vec<&str> = set.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    pub fn set_labels(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|x| self.labels[x].clone()).collect()
    }
}
