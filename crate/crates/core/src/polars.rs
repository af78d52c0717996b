//! Polars, basic elements, bases, units, large ideals, ultrafilters and
//! projectability.

use thiserror::Error;

use crate::closure::{closed_sets, filter_closure};
use crate::ideals::{ideal_join, maximal_of, minimal_of, IdealError, IdealLattice, IdealSet};
use crate::lattice::{FiniteLattice, LatticeId};
use crate::set::{maximal_sets, ElemSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolarError {
    #[error("unknown element index {0}")]
    UnknownElement(usize),
    #[error("polar is not an ideal (lattice is not distributive)")]
    NotAnIdeal,
    #[error("operation needs at least two elements")]
    TrivialLattice,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

/// `A⊥ = { x : x ∧ a = 0 for all a ∈ A }` as a raw set. `∅⊥` is the whole
/// carrier.
pub fn polar_set(lattice: &FiniteLattice, a: ElemSet) -> ElemSet {
    let zero = lattice.bottom();
    lattice
        .all()
        .iter()
        .filter(|&x| a.iter().all(|y| lattice.meet(x, y) == zero))
        .collect()
}

/// A polar together with a flag for the `∅⊥ = L` convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Polar {
    pub ideal: IdealSet,
    pub of_empty_set: bool,
}

pub fn polar(lattice: &FiniteLattice, a: ElemSet) -> Result<Polar, PolarError> {
    if let Some(bad) = a.difference(lattice.all()).min() {
        return Err(PolarError::UnknownElement(bad));
    }
    let members = polar_set(lattice, a);
    let ideal = IdealSet::new(lattice, members).map_err(|_| PolarError::NotAnIdeal)?;
    Ok(Polar {
        ideal,
        of_empty_set: a.is_empty(),
    })
}

/// `A⊥⊥`.
pub fn double_polar_set(lattice: &FiniteLattice, a: ElemSet) -> ElemSet {
    polar_set(lattice, polar_set(lattice, a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarReport {
    /// `P(L)`, canonical order.
    pub polars: Vec<IdealSet>,
    /// Minimal members of `P(L) ∖ {{0}}`.
    pub minimal_polars: Vec<IdealSet>,
    /// Maximal members of `P(L) ∖ {L}`.
    pub maximal_polars: Vec<IdealSet>,
    pub atoms: Vec<usize>,
    pub basic_elements: Vec<usize>,
    pub basis: Option<Vec<usize>>,
    pub is_discrete: bool,
}

impl PolarReport {
    pub fn is_polar(&self, set: ElemSet) -> bool {
        self.polars.iter().any(|p| p.members() == set)
    }
}

/// `P(L)`: intersections of principal polars `x⊥`, each checked against
/// `X = X⊥⊥`.
pub fn enumerate_polars(lattice: &FiniteLattice) -> Result<PolarReport, PolarError> {
    let zero_set = ElemSet::singleton(lattice.bottom());
    let mut family: Vec<ElemSet> = Vec::new();
    let mut frontier: Vec<ElemSet> = lattice
        .all()
        .iter()
        .map(|x| polar_set(lattice, ElemSet::singleton(x)))
        .collect();
    while let Some(p) = frontier.pop() {
        if family.contains(&p) {
            continue;
        }
        for &q in &family {
            let m = p & q;
            if !family.contains(&m) && !frontier.contains(&m) {
                frontier.push(m);
            }
        }
        family.push(p);
    }
    family.sort();
    let mut polars = Vec::with_capacity(family.len());
    for p in family {
        debug_assert_eq!(double_polar_set(lattice, p), p, "polar not closed");
        polars.push(IdealSet::new(lattice, p).map_err(|_| PolarError::NotAnIdeal)?);
    }

    let nonzero: Vec<IdealSet> = polars.iter().copied().filter(|p| p.members() != zero_set).collect();
    let proper: Vec<IdealSet> = polars.iter().copied().filter(|p| p.members() != lattice.all()).collect();
    let (atoms, basic_elements, is_discrete) = atoms_basics(lattice);
    let basis = if lattice.is_trivial() {
        None
    } else {
        find_basis(lattice)?
    };
    Ok(PolarReport {
        minimal_polars: minimal_of(lattice, &nonzero),
        maximal_polars: maximal_of(lattice, &proper),
        polars,
        atoms,
        basic_elements,
        basis,
        is_discrete,
    })
}

/// Nonzero `a` with `(a]` totally ordered.
pub fn is_basic(lattice: &FiniteLattice, a: usize) -> bool {
    !lattice.is_zero(a) && lattice.is_chain(lattice.down(a))
}

/// Atoms, basic elements, and whether every nonzero element exceeds an atom.
pub fn atoms_basics(lattice: &FiniteLattice) -> (Vec<usize>, Vec<usize>, bool) {
    let atoms = lattice.atoms();
    let basic = lattice
        .nonzero()
        .iter()
        .filter(|&a| is_basic(lattice, a))
        .collect();
    let discrete = lattice
        .nonzero()
        .iter()
        .all(|x| !(lattice.down(x) & atoms).is_empty());
    (atoms.to_vec(), basic, discrete)
}

/// Whether `set` is a disjoint set: nonzero members with pairwise zero meets.
pub fn is_disjoint_set(lattice: &FiniteLattice, set: ElemSet) -> bool {
    let zero = lattice.bottom();
    !set.contains(zero)
        && set
            .iter()
            .all(|x| set.iter().all(|y| x == y || lattice.meet(x, y) == zero))
}

/// Whether no nonzero element is disjoint from every member of `set`.
pub fn is_maximal_disjoint(lattice: &FiniteLattice, set: ElemSet) -> bool {
    (polar_set(lattice, set) & lattice.nonzero()).is_empty()
}

/// Greedy basis over basic elements in element order, verified to be a
/// maximal disjoint set. `None` when the greedy set is not maximal.
pub fn find_basis(lattice: &FiniteLattice) -> Result<Option<Vec<usize>>, PolarError> {
    if lattice.is_trivial() {
        return Err(PolarError::TrivialLattice);
    }
    let zero = lattice.bottom();
    let mut chosen = ElemSet::EMPTY;
    for a in lattice.nonzero().iter().filter(|&a| is_basic(lattice, a)) {
        if chosen.iter().all(|s| lattice.meet(a, s) == zero) {
            chosen.insert(a);
        }
    }
    if !chosen.is_empty() && is_disjoint_set(lattice, chosen) && is_maximal_disjoint(lattice, chosen) {
        Ok(Some(chosen.to_vec()))
    } else {
        Ok(None)
    }
}

/// `u > 0` with `u ∧ x > 0` for every `x > 0`.
pub fn is_unit(lattice: &FiniteLattice, u: usize) -> Result<bool, PolarError> {
    if u >= lattice.n() {
        return Err(PolarError::UnknownElement(u));
    }
    let zero = lattice.bottom();
    Ok(u != zero && lattice.nonzero().iter().all(|x| lattice.meet(u, x) != zero))
}

/// `I ∩ J ≠ {0}` for every nonzero ideal `J`.
pub fn is_large(lattice: &FiniteLattice, ideals: &IdealLattice, i: IdealSet) -> Result<bool, PolarError> {
    if i.owner() != lattice.id() {
        return Err(IdealError::MixedLattice.into());
    }
    if !ideals.contains(i.members()) {
        return Err(IdealError::NotAnIdeal.into());
    }
    let zero = ElemSet::singleton(lattice.bottom());
    Ok(ideals
        .iter()
        .filter(|j| j.members() != zero)
        .all(|j| (i.members() & j.members()) != zero))
}

/// A filter: nonempty, excludes the bottom, meet-closed and upward closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSet {
    pub members: ElemSet,
    pub principal_generator: Option<usize>,
    owner: LatticeId,
}

impl FilterSet {
    pub fn owner(&self) -> LatticeId {
        self.owner
    }
}

/// All filters of the lattice, canonical order.
pub fn enumerate_filters(lattice: &FiniteLattice) -> Vec<ElemSet> {
    let zero = lattice.bottom();
    let mut sets: Vec<ElemSet> = closed_sets(lattice.n(), |s| filter_closure(lattice, s))
        .into_iter()
        .filter(|s| !s.is_empty() && !s.contains(zero))
        .collect();
    sets.sort();
    sets
}

/// Maximal filters, each tagged with its generator when it is `[a)` for its
/// least member `a`.
pub fn enumerate_ultrafilters(lattice: &FiniteLattice) -> Result<Vec<FilterSet>, PolarError> {
    if lattice.is_trivial() {
        return Err(PolarError::TrivialLattice);
    }
    let filters = enumerate_filters(lattice);
    Ok(maximal_sets(&filters)
        .into_iter()
        .map(|members| {
            let least = lattice.meet_all(members);
            let principal_generator =
                (members.contains(least) && lattice.up(least) == members).then_some(least);
            FilterSet {
                members,
                principal_generator,
                owner: lattice.id(),
            }
        })
        .collect())
}

/// Whether `L = a⊥⊥ ∨ a⊥` for every `a`, joins taken elementwise. Returns the
/// first element where it fails.
pub fn is_projectable(lattice: &FiniteLattice) -> Result<(bool, Option<usize>), PolarError> {
    for a in 0..lattice.n() {
        let single = ElemSet::singleton(a);
        let p = IdealSet::new(lattice, polar_set(lattice, single)).map_err(|_| PolarError::NotAnIdeal)?;
        let pp = IdealSet::new(lattice, double_polar_set(lattice, single))
            .map_err(|_| PolarError::NotAnIdeal)?;
        if ideal_join(lattice, pp, p)?.members() != lattice.all() {
            return Ok((false, Some(a)));
        }
    }
    Ok((true, None))
}
