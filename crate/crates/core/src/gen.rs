//! Named lattice generators and the exhaustive distributive corpus.
//!
//! The corpus is built from posets: every finite distributive lattice is the
//! lattice of down-sets of its poset of join-irreducibles, so enumerating
//! posets up to isomorphism enumerates distributive lattices.

use std::collections::{BTreeSet, HashSet};
use std::path::Path;

use thiserror::Error;

use crate::canon::{canonical_form, canonical_relation};
use crate::decompose::{is_decomposable, is_distributive};
use crate::format::parse_line_document;
use crate::lattice::{element_cap, FiniteLattice, LatticeError};
use crate::set::ElemSet;

/// Largest poset size accepted by [`enumerate_posets`] and [`corpus`].
pub const POSET_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("bad generator spec `{spec}`: {reason}")]
    BadSpec { spec: String, reason: String },
    #[error("generated lattice would have {n} elements (cap {max})")]
    Overflow { n: u128, max: usize },
    #[error("poset size {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("invalid poset: {0}")]
    Poset(LatticeError),
    #[error("cannot read `{path}`: {message}")]
    Io { path: String, message: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn bad(spec: &str, reason: impl Into<String>) -> GenError {
    GenError::BadSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

/// A finite strict partial order on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetSpec {
    name: String,
    names: Vec<String>,
    /// `above[i]`: elements strictly greater than `i`.
    above: Vec<ElemSet>,
}

impl PosetSpec {
    /// Builds the transitive closure of `pairs` (`(x, y)` meaning `x < y`).
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        pairs: &[(usize, usize)],
    ) -> Result<Self, GenError> {
        let n = names.len();
        if n > 64 {
            return Err(GenError::Poset(LatticeError::TooLarge { n, max: 64 }));
        }
        let mut above = vec![ElemSet::EMPTY; n];
        for &(x, y) in pairs {
            if x == y {
                return Err(GenError::Poset(LatticeError::Cycle(names[x].clone())));
            }
            above[x].insert(y);
        }
        for k in 0..n {
            for i in 0..n {
                if above[i].contains(k) {
                    above[i] = above[i] | above[k];
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| above[i].contains(i)) {
            return Err(GenError::Poset(LatticeError::Cycle(names[i].clone())));
        }
        Ok(PosetSpec {
            name: name.into(),
            names,
            above,
        })
    }

    /// Poset with default element names.
    pub fn unnamed(n: usize, pairs: &[(usize, usize)]) -> Result<Self, GenError> {
        PosetSpec::new(format!("poset{n}"), default_names(n), pairs)
    }

    pub fn antichain(n: usize) -> Self {
        PosetSpec::unnamed(n, &[]).expect("antichain is a poset")
    }

    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        PosetSpec::unnamed(n, &pairs).expect("chain is a poset")
    }

    /// Parses `poset <name>` / `elements ...` / `relations x<y ...`.
    pub fn parse(source: &str) -> Result<Self, GenError> {
        let doc = parse_line_document(source, "poset", "relations").map_err(GenError::Poset)?;
        PosetSpec::new(doc.name, doc.elements, &doc.pairs)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn above(&self, x: usize) -> ElemSet {
        self.above[x]
    }

    pub fn below(&self, y: usize) -> ElemSet {
        (0..self.n()).filter(|&x| self.lt(x, y)).collect()
    }

    /// Strict order matrix: `matrix[x][y]` iff `x < y`.
    pub fn matrix(&self) -> Vec<Vec<bool>> {
        (0..self.n())
            .map(|x| (0..self.n()).map(|y| self.lt(x, y)).collect())
            .collect()
    }

    /// All strict pairs `x < y`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|x| self.above[x].iter().map(move |y| (x, y)))
            .collect()
    }

    pub fn is_down_set(&self, set: ElemSet) -> bool {
        set.iter().all(|y| self.below(y).is_subset(set))
    }

    /// Canonical encoding: equal iff isomorphic.
    pub fn canonical(&self) -> Vec<u8> {
        canonical_relation(&self.above).bytes
    }

    /// Emits the poset file format.
    pub fn emit(&self) -> String {
        let mut out = format!("poset {}\nelements {}\n", self.name, self.names.join(" "));
        let pairs: Vec<String> = self
            .pairs()
            .into_iter()
            .filter(|&(x, y)| !(0..self.n()).any(|z| self.lt(x, z) && self.lt(z, y)))
            .map(|(x, y)| format!("{}<{}", self.names[x], self.names[y]))
            .collect();
        if !pairs.is_empty() {
            out.push_str(&format!("relations {}\n", pairs.join(" ")));
        }
        out
    }
}

fn default_names(n: usize) -> Vec<String> {
    const LETTERS: &[u8] = b"pqrsuvwxyz";
    (0..n)
        .map(|i| match LETTERS.get(i) {
            Some(&c) => (c as char).to_string(),
            None => format!("p{i}"),
        })
        .collect()
}

/// Down-sets of `poset` in canonical set order, or `Overflow` past `cap`.
fn down_sets(poset: &PosetSpec, cap: usize) -> Result<Vec<ElemSet>, GenError> {
    let below: Vec<ElemSet> = (0..poset.n()).map(|y| poset.below(y)).collect();
    let mut seen: HashSet<ElemSet> = HashSet::from([ElemSet::EMPTY]);
    let mut layer = vec![ElemSet::EMPTY];
    while !layer.is_empty() {
        let mut next = Vec::new();
        for d in layer {
            for x in (0..poset.n()).filter(|&x| !d.contains(x) && below[x].is_subset(d)) {
                let grown = d.with(x);
                if seen.insert(grown) {
                    if seen.len() > cap {
                        return Err(GenError::Overflow {
                            n: seen.len() as u128,
                            max: cap,
                        });
                    }
                    next.push(grown);
                }
            }
        }
        layer = next;
    }
    let mut all: Vec<ElemSet> = seen.into_iter().collect();
    all.sort();
    Ok(all)
}

/// Lattice of down-sets of `poset` under inclusion. Elements are labelled
/// `0` (empty down-set) or by their members' names.
pub fn downset_lattice(poset: &PosetSpec) -> Result<FiniteLattice, GenError> {
    let sets = down_sets(poset, element_cap())?;
    let single = poset.names.iter().all(|s| s.chars().count() == 1);
    let mut labels: Vec<String> = sets
        .iter()
        .map(|d| {
            if d.is_empty() {
                "0".to_string()
            } else {
                let parts: Vec<&str> = d.iter().map(|i| poset.names[i].as_str()).collect();
                parts.join(if single { "" } else { "+" })
            }
        })
        .collect();
    if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
        labels = (0..sets.len()).map(|i| format!("d{i}")).collect();
    }
    let mut pairs = Vec::new();
    for (i, a) in sets.iter().enumerate() {
        for (j, b) in sets.iter().enumerate() {
            if a.is_proper_subset(*b) {
                pairs.push((i, j));
            }
        }
    }
    let lattice = FiniteLattice::from_relation(poset.name.clone(), labels, &pairs)?;
    debug_assert!(is_distributive(&lattice).holds);
    Ok(lattice)
}

/// One representative per isomorphism class of `n`-element posets, ordered
/// by canonical encoding. `n = 0` yields the empty poset.
pub fn enumerate_posets(n: usize) -> Result<Vec<PosetSpec>, GenError> {
    if n > POSET_CAP {
        return Err(GenError::CapExceeded { n, cap: POSET_CAP });
    }
    let mut reps = vec![PosetSpec::antichain(0)];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next: Vec<(Vec<u8>, PosetSpec)> = Vec::new();
        for rep in &reps {
            for d in down_sets(rep, usize::MAX)? {
                let mut pairs = rep.pairs();
                pairs.extend(d.iter().map(|x| (x, k - 1)));
                let candidate = PosetSpec::unnamed(k, &pairs)?;
                let canon = canonical_relation(&candidate.above);
                if seen.insert(canon.bytes.clone()) {
                    next.push((canon.bytes, relabel(&candidate, &canon.labeling)));
                }
            }
        }
        next.sort_by(|a, b| a.0.cmp(&b.0));
        reps = next.into_iter().map(|(_, p)| p).collect();
    }
    for (i, p) in reps.iter_mut().enumerate() {
        p.name = format!("poset{n}_{i}");
    }
    Ok(reps)
}

fn relabel(poset: &PosetSpec, labeling: &[usize]) -> PosetSpec {
    let pairs: Vec<_> = poset
        .pairs()
        .into_iter()
        .map(|(x, y)| (labeling[x], labeling[y]))
        .collect();
    PosetSpec::unnamed(poset.n(), &pairs).expect("relabeling preserves the order")
}

/// A corpus lattice together with its source poset and tags.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub lattice: FiniteLattice,
    pub poset: PosetSpec,
    pub canonical: Vec<u8>,
    pub decomposable: bool,
}

/// Down-set lattices of every poset with at most `max_poset_size` elements,
/// deduplicated by canonical form, ordered by poset size then poset order.
pub fn corpus(max_poset_size: usize) -> Result<Vec<CorpusEntry>, GenError> {
    if max_poset_size > POSET_CAP {
        return Err(GenError::CapExceeded {
            n: max_poset_size,
            cap: POSET_CAP,
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for k in 0..=max_poset_size {
        for poset in enumerate_posets(k)? {
            let lattice = downset_lattice(&poset)?;
            let canonical = canonical_form(&lattice);
            if !seen.insert(canonical.clone()) {
                continue;
            }
            let decomposable = is_decomposable(&lattice).holds;
            out.push(CorpusEntry {
                lattice,
                poset,
                canonical,
                decomposable,
            });
        }
    }
    Ok(out)
}

/// Builds a lattice from a generator spec:
///
/// ```text
/// spec := "chain:" n | "boolean:" k | "divisor:" m | "product:" spec "*" spec
///       | "plustop:" spec | "downsets:" path
/// ```
///
/// `downsets:` paths are resolved relative to the working directory.
pub fn gen_named(spec: &str) -> Result<FiniteLattice, GenError> {
    let mut parser = SpecParser { src: spec, pos: 0 };
    let lattice = parser.spec()?;
    if parser.pos != spec.len() {
        return Err(bad(spec, format!("trailing input at byte {}", parser.pos)));
    }
    Ok(lattice.with_name(spec))
}

struct SpecParser<'a> {
    src: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn spec(&mut self) -> Result<FiniteLattice, GenError> {
        let rest = self.rest();
        let Some(colon) = rest.find(':') else {
            return Err(bad(self.src, format!("expected `kind:` at byte {}", self.pos)));
        };
        let kind = rest[..colon].to_string();
        self.pos += colon + 1;
        match kind.as_str() {
            "chain" => {
                let n = self.number()?;
                chain(self.src, n)
            }
            "boolean" => {
                let k = self.number()?;
                boolean(k)
            }
            "divisor" => {
                let m = self.number()?;
                divisor(self.src, m)
            }
            "product" => {
                let left = self.spec()?;
                if !self.rest().starts_with('*') {
                    return Err(bad(self.src, format!("expected `*` at byte {}", self.pos)));
                }
                self.pos += 1;
                let right = self.spec()?;
                product(&left, &right)
            }
            "plustop" => {
                let inner = self.spec()?;
                plus_top(&inner)
            }
            "downsets" => {
                let rest = self.rest();
                let end = rest.find('*').unwrap_or(rest.len());
                let path = rest[..end].to_string();
                self.pos += end;
                if path.is_empty() {
                    return Err(bad(self.src, "missing poset file path"));
                }
                let source = std::fs::read_to_string(Path::new(&path)).map_err(|e| GenError::Io {
                    path: path.clone(),
                    message: e.to_string(),
                })?;
                downset_lattice(&PosetSpec::parse(&source)?)
            }
            other => Err(bad(self.src, format!("unknown generator `{other}`"))),
        }
    }

    fn number(&mut self) -> Result<u64, GenError> {
        let rest = self.rest();
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if end == 0 {
            return Err(bad(self.src, format!("expected a number at byte {}", self.pos)));
        }
        let value = rest[..end]
            .parse::<u64>()
            .map_err(|_| bad(self.src, "number out of range"))?;
        self.pos += end;
        Ok(value)
    }
}

fn check_size(n: u128) -> Result<usize, GenError> {
    let max = element_cap();
    if n > max as u128 {
        Err(GenError::Overflow { n, max })
    } else {
        Ok(n as usize)
    }
}

fn chain(spec: &str, n: u64) -> Result<FiniteLattice, GenError> {
    if n == 0 {
        return Err(bad(spec, "a chain needs at least one element"));
    }
    let n = check_size(n as u128)?;
    let labels = (0..n).map(|i| i.to_string()).collect();
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(FiniteLattice::from_relation("chain", labels, &pairs)?)
}

fn boolean(k: u64) -> Result<FiniteLattice, GenError> {
    let size = if k >= 127 { u128::MAX } else { 1u128 << k };
    check_size(size)?;
    let names = (0..k as usize)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    downset_lattice(&PosetSpec::new("boolean", names, &[])?)
}

fn divisor(spec: &str, m: u64) -> Result<FiniteLattice, GenError> {
    if m == 0 {
        return Err(bad(spec, "divisor lattice needs m >= 1"));
    }
    let mut divisors = Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= m {
        if m.is_multiple_of(d) {
            divisors.push(d);
            if d != m / d {
                divisors.push(m / d);
            }
        }
        d += 1;
    }
    divisors.sort_unstable();
    let n = check_size(divisors.len() as u128)?;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if divisors[j] % divisors[i] == 0 {
                pairs.push((i, j));
            }
        }
    }
    let labels = divisors.iter().map(u64::to_string).collect();
    Ok(FiniteLattice::from_relation("divisor", labels, &pairs)?)
}

/// Componentwise order on pairs, elements in lexicographic index order,
/// labels `x.y`.
pub fn product(left: &FiniteLattice, right: &FiniteLattice) -> Result<FiniteLattice, GenError> {
    let (n, m) = (left.n(), right.n());
    check_size(n as u128 * m as u128)?;
    let mut labels = Vec::with_capacity(n * m);
    for x in 0..n {
        for y in 0..m {
            labels.push(format!("{}.{}", left.label(x), right.label(y)));
        }
    }
    let mut pairs = Vec::new();
    for a in 0..n * m {
        for b in 0..n * m {
            let (x1, y1, x2, y2) = (a / m, a % m, b / m, b % m);
            if a != b && left.leq(x1, x2) && right.leq(y1, y2) {
                pairs.push((a, b));
            }
        }
    }
    Ok(FiniteLattice::from_relation("product", labels, &pairs)?)
}

/// Ordinal sum with a one-element chain: a new top `t` (primed until the
/// label is unused).
pub fn plus_top(inner: &FiniteLattice) -> Result<FiniteLattice, GenError> {
    let n = check_size(inner.n() as u128 + 1)?;
    let mut top = "t".to_string();
    while inner.index_of(&top).is_some() {
        top.push('\'');
    }
    let mut labels = inner.labels().to_vec();
    labels.push(top);
    let mut pairs: Vec<_> = inner.cover_pairs();
    pairs.push((inner.top(), n - 1));
    Ok(FiniteLattice::from_relation("plustop", labels, &pairs)?)
}
