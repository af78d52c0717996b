//! Ideals, prime ideals, values and the value spectrum.

use std::collections::HashMap;

use thiserror::Error;

use crate::closure::{closed_sets, ideal_closure};
use crate::lattice::{FiniteLattice, LatticeId};
use crate::set::{maximal_sets, minimal_sets, ElemSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("sets belong to different lattices")]
    MixedLattice,
    #[error("unknown element index {0}")]
    UnknownElement(usize),
    #[error("the zero element has no value")]
    ZeroElement,
    #[error("set is not an ideal")]
    NotAnIdeal,
    #[error("the whole lattice has no strict superset ideal")]
    FullLattice,
    #[error("operation needs at least two elements")]
    TrivialLattice,
    #[error("elementwise join of the two ideals is not an ideal (lattice is not distributive)")]
    JoinNotIdeal,
}

/// An ideal of a specific lattice: contains the bottom, is downward closed
/// and closed under binary joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IdealSet {
    members: ElemSet,
    owner: LatticeId,
}

// An ideal always contains the bottom, so it is never empty.
#[allow(clippy::len_without_is_empty)]
impl IdealSet {
    /// Wraps `members` after checking the ideal axioms in `lattice`.
    pub fn new(lattice: &FiniteLattice, members: ElemSet) -> Result<Self, IdealError> {
        if is_ideal(lattice, members) {
            Ok(IdealSet {
                members,
                owner: lattice.id(),
            })
        } else {
            Err(IdealError::NotAnIdeal)
        }
    }

    pub(crate) fn trusted(lattice: &FiniteLattice, members: ElemSet) -> Self {
        debug_assert!(is_ideal(lattice, members), "not an ideal: {members:?}");
        IdealSet {
            members,
            owner: lattice.id(),
        }
    }

    pub fn members(self) -> ElemSet {
        self.members
    }

    pub fn owner(self) -> LatticeId {
        self.owner
    }

    pub fn contains(self, x: usize) -> bool {
        self.members.contains(x)
    }

    pub fn len(self) -> usize {
        self.members.len()
    }

    pub fn is_subset(self, other: IdealSet) -> bool {
        self.members.is_subset(other.members)
    }

    pub fn is_proper_subset(self, other: IdealSet) -> bool {
        self.members.is_proper_subset(other.members)
    }

    pub fn intersection(self, other: IdealSet) -> Result<IdealSet, IdealError> {
        if self.owner != other.owner {
            return Err(IdealError::MixedLattice);
        }
        Ok(IdealSet {
            members: self.members & other.members,
            owner: self.owner,
        })
    }
}

pub fn is_ideal(lattice: &FiniteLattice, set: ElemSet) -> bool {
    if !set.contains(lattice.bottom()) || !set.is_subset(lattice.all()) {
        return false;
    }
    if !lattice.is_down_closed(set) {
        return false;
    }
    set.iter()
        .all(|a| set.iter().all(|b| set.contains(lattice.join(a, b))))
}

fn owned(lattice: &FiniteLattice, ideal: IdealSet) -> Result<(), IdealError> {
    if ideal.owner == lattice.id() {
        Ok(())
    } else {
        Err(IdealError::MixedLattice)
    }
}

/// `(a] = { x : x ≤ a }`.
pub fn principal_ideal(lattice: &FiniteLattice, a: usize) -> Result<IdealSet, IdealError> {
    if a >= lattice.n() {
        return Err(IdealError::UnknownElement(a));
    }
    Ok(IdealSet::trusted(lattice, lattice.down(a)))
}

/// Elementwise join `{ a ∨ b : a ∈ I, b ∈ J }`. The result is checked to be
/// an ideal, which always holds in a distributive lattice.
pub fn ideal_join(lattice: &FiniteLattice, i: IdealSet, j: IdealSet) -> Result<IdealSet, IdealError> {
    owned(lattice, i)?;
    owned(lattice, j)?;
    let members = join_sets(lattice, i.members, j.members);
    IdealSet::new(lattice, members).map_err(|_| IdealError::JoinNotIdeal)
}

pub(crate) fn join_sets(lattice: &FiniteLattice, a: ElemSet, b: ElemSet) -> ElemSet {
    let mut out = ElemSet::EMPTY;
    for x in a.iter() {
        for y in b.iter() {
            out.insert(lattice.join(x, y));
        }
    }
    out
}

/// All ideals of a lattice in canonical order (size, then lexicographic),
/// with inclusion as order, intersection as meet and elementwise join.
#[derive(Debug, Clone)]
pub struct IdealLattice {
    owner: LatticeId,
    ideals: Vec<IdealSet>,
    index: HashMap<ElemSet, usize>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[IdealSet] {
        &self.ideals
    }

    pub fn iter(&self) -> impl Iterator<Item = IdealSet> + '_ {
        self.ideals.iter().copied()
    }

    pub fn owner(&self) -> LatticeId {
        self.owner
    }

    pub fn position(&self, set: ElemSet) -> Option<usize> {
        self.index.get(&set).copied()
    }

    pub fn contains(&self, set: ElemSet) -> bool {
        self.index.contains_key(&set)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.ideals[i].is_subset(self.ideals[j])
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        let m = self.ideals[i].members & self.ideals[j].members;
        self.index[&m]
    }

    /// Elementwise join; `None` when the result is not an ideal.
    pub fn join(&self, lattice: &FiniteLattice, i: usize, j: usize) -> Option<usize> {
        let m = join_sets(lattice, self.ideals[i].members, self.ideals[j].members);
        self.position(m)
    }

    /// Checks closure under both operations and the distributive law over all
    /// triples of ideals.
    pub fn is_distributive(&self, lattice: &FiniteLattice) -> bool {
        let k = self.len();
        let mut joins = vec![0usize; k * k];
        for i in 0..k {
            for j in 0..k {
                match self.join(lattice, i, j) {
                    Some(x) => joins[i * k + j] = x,
                    None => return false,
                }
            }
        }
        (0..k).all(|a| {
            (0..k).all(|b| {
                (0..k).all(|c| {
                    self.meet(a, joins[b * k + c])
                        == joins[self.meet(a, b) * k + self.meet(a, c)]
                })
            })
        })
    }
}

/// Enumerates `Ide(L)` as the closed sets of the ideal closure operator.
pub fn enumerate_ideals(lattice: &FiniteLattice) -> IdealLattice {
    let mut sets = closed_sets(lattice.n(), |s| ideal_closure(lattice, s));
    sets.sort();
    let index = sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    IdealLattice {
        owner: lattice.id(),
        ideals: sets.into_iter().map(|s| IdealSet::trusted(lattice, s)).collect(),
        index,
    }
}

/// Whether a proper ideal satisfies `a ∧ b ∈ P ⇒ a ∈ P or b ∈ P`.
pub fn is_prime(lattice: &FiniteLattice, set: ElemSet) -> bool {
    if set == lattice.all() {
        return false;
    }
    let n = lattice.n();
    (0..n).all(|a| {
        set.contains(a)
            || (0..n).all(|b| set.contains(b) || !set.contains(lattice.meet(a, b)))
    })
}

/// `Spe(L)` in canonical order.
pub fn enumerate_primes(lattice: &FiniteLattice) -> Vec<IdealSet> {
    primes_in(lattice, &enumerate_ideals(lattice))
}

pub fn primes_in(lattice: &FiniteLattice, ideals: &IdealLattice) -> Vec<IdealSet> {
    ideals
        .iter()
        .filter(|p| is_prime(lattice, p.members))
        .collect()
}

/// `MinSpe(L)`: inclusion-minimal primes, canonical order.
pub fn minimal_primes(lattice: &FiniteLattice) -> Vec<IdealSet> {
    minimal_of(lattice, &enumerate_primes(lattice))
}

pub fn minimal_of(lattice: &FiniteLattice, family: &[IdealSet]) -> Vec<IdealSet> {
    let sets: Vec<ElemSet> = family.iter().map(|p| p.members).collect();
    minimal_sets(&sets)
        .into_iter()
        .map(|s| IdealSet::trusted(lattice, s))
        .collect()
}

pub fn maximal_of(lattice: &FiniteLattice, family: &[IdealSet]) -> Vec<IdealSet> {
    let sets: Vec<ElemSet> = family.iter().map(|p| p.members).collect();
    maximal_sets(&sets)
        .into_iter()
        .map(|s| IdealSet::trusted(lattice, s))
        .collect()
}

/// `Val(x)`: ideals maximal with respect to not containing `x`.
pub fn values(lattice: &FiniteLattice, x: usize) -> Result<Vec<IdealSet>, IdealError> {
    values_in(lattice, &enumerate_ideals(lattice), x)
}

pub fn values_in(
    lattice: &FiniteLattice,
    ideals: &IdealLattice,
    x: usize,
) -> Result<Vec<IdealSet>, IdealError> {
    if x >= lattice.n() {
        return Err(IdealError::UnknownElement(x));
    }
    if lattice.is_zero(x) {
        return Err(IdealError::ZeroElement);
    }
    let free: Vec<IdealSet> = ideals.iter().filter(|i| !i.contains(x)).collect();
    Ok(maximal_of(lattice, &free))
}

/// `M* = ⋂ { I ∈ Ide(L) : I ⊃ M }`.
pub fn m_star(lattice: &FiniteLattice, m: IdealSet) -> Result<IdealSet, IdealError> {
    m_star_in(lattice, &enumerate_ideals(lattice), m)
}

pub fn m_star_in(
    lattice: &FiniteLattice,
    ideals: &IdealLattice,
    m: IdealSet,
) -> Result<IdealSet, IdealError> {
    owned(lattice, m)?;
    if !ideals.contains(m.members) {
        return Err(IdealError::NotAnIdeal);
    }
    if m.members == lattice.all() {
        return Err(IdealError::FullLattice);
    }
    let star = ideals
        .iter()
        .filter(|i| m.is_proper_subset(*i))
        .fold(lattice.all(), |acc, i| acc & i.members);
    Ok(IdealSet::trusted(lattice, star))
}

/// `M ∈ V(L)` decided as `M ⊂ M*`.
pub fn is_value(lattice: &FiniteLattice, m: IdealSet) -> Result<bool, IdealError> {
    Ok(m.is_proper_subset(m_star(lattice, m)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementValues {
    pub element: usize,
    pub values: Vec<IdealSet>,
}

/// Values of every nonzero element and the derived families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueReport {
    /// Nonzero elements in element order.
    pub per_element: Vec<ElementValues>,
    /// `V(L)`, canonical order.
    pub all_values: Vec<IdealSet>,
    /// `S(L)`: values of special elements.
    pub special_values: Vec<IdealSet>,
    /// Elements with exactly one value.
    pub specials: Vec<usize>,
    /// `E(L)`.
    pub essential_values: Vec<IdealSet>,
    /// `Rad(L) = ⋂ E(L)`; the whole lattice when `E(L)` is empty.
    pub radical: IdealSet,
    pub radical_empty_family: bool,
    /// `(M, M*)` for every `M ∈ V(L)`.
    pub m_star: Vec<(IdealSet, IdealSet)>,
}

impl ValueReport {
    pub fn values_of(&self, x: usize) -> &[IdealSet] {
        self.per_element
            .iter()
            .find(|e| e.element == x)
            .map_or(&[], |e| &e.values)
    }

    /// `v(x) = |Val(x)|`.
    pub fn count(&self, x: usize) -> usize {
        self.values_of(x).len()
    }

    pub fn is_special(&self, x: usize) -> bool {
        self.count(x) == 1
    }
}

pub fn value_spectrum(lattice: &FiniteLattice) -> Result<ValueReport, IdealError> {
    value_spectrum_in(lattice, &enumerate_ideals(lattice))
}

pub fn value_spectrum_in(
    lattice: &FiniteLattice,
    ideals: &IdealLattice,
) -> Result<ValueReport, IdealError> {
    if lattice.is_trivial() {
        return Err(IdealError::TrivialLattice);
    }
    let per_element: Vec<ElementValues> = lattice
        .nonzero()
        .iter()
        .map(|x| {
            values_in(lattice, ideals, x).map(|values| ElementValues { element: x, values })
        })
        .collect::<Result<_, _>>()?;

    let mut all_values: Vec<IdealSet> = per_element
        .iter()
        .flat_map(|e| e.values.iter().copied())
        .collect();
    all_values.sort();
    all_values.dedup();

    let specials: Vec<usize> = per_element
        .iter()
        .filter(|e| e.values.len() == 1)
        .map(|e| e.element)
        .collect();
    let mut special_values: Vec<IdealSet> = per_element
        .iter()
        .filter(|e| e.values.len() == 1)
        .map(|e| e.values[0])
        .collect();
    special_values.sort();
    special_values.dedup();

    let essential_values: Vec<IdealSet> = all_values
        .iter()
        .copied()
        .filter(|m| {
            per_element
                .iter()
                .any(|e| e.values.iter().all(|g| g.is_subset(*m)))
        })
        .collect();

    let radical_empty_family = essential_values.is_empty();
    let radical = essential_values
        .iter()
        .fold(lattice.all(), |acc, m| acc & m.members);

    let m_star = all_values
        .iter()
        .map(|&m| m_star_in(lattice, ideals, m).map(|s| (m, s)))
        .collect::<Result<_, _>>()?;

    Ok(ValueReport {
        per_element,
        all_values,
        special_values,
        specials,
        essential_values,
        radical: IdealSet::trusted(lattice, radical),
        radical_empty_family,
        m_star,
    })
}
