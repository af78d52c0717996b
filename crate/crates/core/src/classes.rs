//! Definitional class membership for decomposable lattices.
//!
//! Every verdict here is evaluated from the class definition on the finite
//! carrier; none relies on a characterization theorem. The audit module
//! checks the theorems against these verdicts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decompose::{is_decomposable, DecomposabilityFailure};
use crate::ideals::{
    enumerate_ideals, minimal_of, primes_in, value_spectrum_in, IdealError, IdealLattice, IdealSet,
    ValueReport,
};
use crate::lattice::FiniteLattice;
use crate::polars::{enumerate_polars, find_basis, is_disjoint_set, is_projectable, PolarError};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("lattice is not decomposable: {0:?}")]
    NotDecomposable(DecomposabilityFailure),
    #[error("class B_n needs n >= 1")]
    ZeroBound,
    #[error("operation needs at least two elements")]
    TrivialLattice,
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Polar(#[from] PolarError),
}

/// Class symbols accepted by queries: `A B B<n> Bw C Cw D E F Fv S Sw T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassId {
    A,
    B,
    Bn(usize),
    BOmega,
    C,
    COmega,
    D,
    E,
    F,
    Fv,
    S,
    SOmega,
    T,
}

impl FromStr for ClassId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "A" => ClassId::A,
            "B" => ClassId::B,
            "Bw" => ClassId::BOmega,
            "C" => ClassId::C,
            "Cw" => ClassId::COmega,
            "D" => ClassId::D,
            "E" => ClassId::E,
            "F" => ClassId::F,
            "Fv" => ClassId::Fv,
            "S" => ClassId::S,
            "Sw" => ClassId::SOmega,
            "T" => ClassId::T,
            _ => match s.strip_prefix('B').map(str::parse::<usize>) {
                Some(Ok(n)) if n >= 1 => ClassId::Bn(n),
                _ => return Err(format!("unknown class `{s}`")),
            },
        })
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::A => f.write_str("A"),
            ClassId::B => f.write_str("B"),
            ClassId::Bn(n) => write!(f, "B{n}"),
            ClassId::BOmega => f.write_str("Bw"),
            ClassId::C => f.write_str("C"),
            ClassId::COmega => f.write_str("Cw"),
            ClassId::D => f.write_str("D"),
            ClassId::E => f.write_str("E"),
            ClassId::F => f.write_str("F"),
            ClassId::Fv => f.write_str("Fv"),
            ClassId::S => f.write_str("S"),
            ClassId::SOmega => f.write_str("Sw"),
            ClassId::T => f.write_str("T"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassWitness {
    /// A prime ideal that is not minimal.
    NonMinimalPrime(ElemSet),
    /// A prime containing the most minimal primes.
    MostMinimalPrimes { prime: ElemSet, count: usize },
    /// Length of the longest strictly descending chain in a finite family.
    LongestDescendingChain(usize),
    /// Largest disjoint set with upper bound `bound`.
    LargestDisjointSet { bound: usize, size: usize },
    /// Element with the most values.
    MostValues { element: usize, count: usize },
    Basis(Vec<usize>),
    NotProjectable(usize),
    Inconsistent {
        lower: usize,
        upper: usize,
        lower_count: usize,
        upper_count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassVerdict {
    pub member: bool,
    pub witness: Option<ClassWitness>,
    /// Set when finiteness of the carrier forces the verdict.
    pub finite_degenerate: bool,
}

impl ClassVerdict {
    fn new(member: bool, witness: Option<ClassWitness>) -> Self {
        ClassVerdict {
            member,
            witness,
            finite_degenerate: false,
        }
    }

    fn degenerate(member: bool, witness: Option<ClassWitness>) -> Self {
        ClassVerdict {
            member,
            witness,
            finite_degenerate: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    /// One-element lattice: every class holds vacuously.
    pub trivial: bool,
    pub a: ClassVerdict,
    pub b: ClassVerdict,
    /// Largest number of minimal primes contained in one prime; `L ∈ B_n`
    /// iff this is at most `n`.
    pub max_minimal_primes_under_prime: usize,
    pub minimal_prime_count: usize,
    pub b_omega: ClassVerdict,
    pub c: ClassVerdict,
    pub c_omega: ClassVerdict,
    pub d: ClassVerdict,
    pub e: ClassVerdict,
    pub f: ClassVerdict,
    pub f_v: ClassVerdict,
    pub s: ClassVerdict,
    pub s_omega: ClassVerdict,
    pub t: ClassVerdict,
    pub consistent: ClassVerdict,
}

impl ClassReport {
    pub fn in_bn(&self, n: usize) -> Result<bool, ClassError> {
        if n == 0 {
            return Err(ClassError::ZeroBound);
        }
        Ok(self.max_minimal_primes_under_prime <= n)
    }

    pub fn member(&self, class: ClassId) -> Result<bool, ClassError> {
        Ok(match class {
            ClassId::A => self.a.member,
            ClassId::B => self.b.member,
            ClassId::Bn(n) => self.in_bn(n)?,
            ClassId::BOmega => self.b_omega.member,
            ClassId::C => self.c.member,
            ClassId::COmega => self.c_omega.member,
            ClassId::D => self.d.member,
            ClassId::E => self.e.member,
            ClassId::F => self.f.member,
            ClassId::Fv => self.f_v.member,
            ClassId::S => self.s.member,
            ClassId::SOmega => self.s_omega.member,
            ClassId::T => self.t.member,
        })
    }
}

/// Number of minimal primes under each prime, and the first prime attaining
/// the maximum.
fn minimal_prime_counts(primes: &[IdealSet], minimal: &[IdealSet]) -> (usize, Option<IdealSet>) {
    let mut best: (usize, Option<IdealSet>) = (0, None);
    for &p in primes {
        let count = minimal.iter().filter(|m| m.is_subset(p)).count();
        if best.1.is_none() || count > best.0 {
            best = (count, Some(p));
        }
    }
    best
}

/// `L ∈ B_n`: every prime contains at most `n` minimal primes. The witness
/// is a prime containing the most.
pub fn in_bn(lattice: &FiniteLattice, n: usize) -> Result<(bool, Option<IdealSet>), ClassError> {
    if n == 0 {
        return Err(ClassError::ZeroBound);
    }
    let ideals = enumerate_ideals(lattice);
    let primes = primes_in(lattice, &ideals);
    let minimal = minimal_of(lattice, &primes);
    let (count, witness) = minimal_prime_counts(&primes, &minimal);
    Ok((count <= n, witness))
}

/// Consistency: `0 < x ≤ y ⇒ v(x) ≤ v(y)`. Returns the first violating pair.
pub fn is_consistent(lattice: &FiniteLattice) -> Result<(bool, Option<(usize, usize)>), ClassError> {
    let ideals = enumerate_ideals(lattice);
    let spectrum = value_spectrum_in(lattice, &ideals).map_err(|e| match e {
        IdealError::TrivialLattice => ClassError::TrivialLattice,
        other => other.into(),
    })?;
    Ok(consistency_of(lattice, &spectrum))
}

fn consistency_of(lattice: &FiniteLattice, spectrum: &ValueReport) -> (bool, Option<(usize, usize)>) {
    for x in lattice.nonzero().iter() {
        for y in lattice.up(x).iter() {
            if spectrum.count(x) > spectrum.count(y) {
                return (false, Some((x, y)));
            }
        }
    }
    (true, None)
}

/// Longest strictly descending chain (counted in members) in a finite
/// family under inclusion.
pub fn longest_descending_chain(family: &[ElemSet]) -> usize {
    let mut sorted = family.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut depth = vec![1usize; sorted.len()];
    for i in 0..sorted.len() {
        for j in 0..i {
            if sorted[j].is_proper_subset(sorted[i]) {
                depth[i] = depth[i].max(depth[j] + 1);
            }
        }
    }
    depth.into_iter().max().unwrap_or(0)
}

/// Largest disjoint set whose members all lie below `bound`.
pub fn largest_disjoint_below(lattice: &FiniteLattice, bound: usize) -> usize {
    let candidates: Vec<usize> = lattice.down(bound).without(lattice.bottom()).to_vec();
    fn grow(lattice: &FiniteLattice, candidates: &[usize], start: usize, chosen: ElemSet) -> usize {
        let mut best = chosen.len();
        for (k, &c) in candidates.iter().enumerate().skip(start) {
            if chosen.iter().all(|s| lattice.meet(s, c) == lattice.bottom()) {
                best = best.max(grow(lattice, candidates, k + 1, chosen.with(c)));
            }
        }
        best
    }
    let size = grow(lattice, &candidates, 0, ElemSet::EMPTY);
    debug_assert!(size == 0 || size <= candidates.len());
    size
}

/// Decides every class for a decomposable lattice.
pub fn classify(lattice: &FiniteLattice) -> Result<ClassReport, ClassError> {
    let dec = is_decomposable(lattice);
    if let Some(failure) = dec.failure {
        return Err(ClassError::NotDecomposable(failure));
    }
    if lattice.is_trivial() {
        let yes = ClassVerdict::new(true, None);
        let degenerate = ClassVerdict::degenerate(true, None);
        return Ok(ClassReport {
            trivial: true,
            a: yes.clone(),
            b: yes.clone(),
            max_minimal_primes_under_prime: 0,
            minimal_prime_count: 0,
            b_omega: yes.clone(),
            c: degenerate.clone(),
            c_omega: degenerate.clone(),
            d: degenerate.clone(),
            e: degenerate.clone(),
            f: degenerate.clone(),
            f_v: degenerate.clone(),
            s: ClassVerdict::degenerate(true, Some(ClassWitness::Basis(Vec::new()))),
            s_omega: ClassVerdict::degenerate(true, Some(ClassWitness::Basis(Vec::new()))),
            t: yes.clone(),
            consistent: yes,
        });
    }

    let ideals = enumerate_ideals(lattice);
    let primes = primes_in(lattice, &ideals);
    let minimal = minimal_of(lattice, &primes);
    let spectrum = value_spectrum_in(lattice, &ideals)?;

    let non_minimal = primes.iter().find(|p| !minimal.contains(p));
    let a = ClassVerdict::new(
        non_minimal.is_none(),
        non_minimal.map(|p| ClassWitness::NonMinimalPrime(p.members())),
    );

    let (max_under, most) = minimal_prime_counts(&primes, &minimal);
    let most_witness = most.map(|p| ClassWitness::MostMinimalPrimes {
        prime: p.members(),
        count: max_under,
    });
    let b = ClassVerdict::new(max_under <= 1, most_witness.clone());
    let b_omega = ClassVerdict::new(max_under <= minimal.len().max(1), most_witness);

    // Every subset of a finite carrier is finite, so a family with meet 0 is
    // its own finite subfamily.
    let c = ClassVerdict::degenerate(true, None);
    let c_omega = ClassVerdict::degenerate(true, None);

    let d = descending_chain_verdict(&ideals_members(&ideals));
    let e = descending_chain_verdict(
        &spectrum.all_values.iter().map(|m| m.members()).collect::<Vec<_>>(),
    );

    let f = {
        let (bound, size) = lattice
            .nonzero()
            .iter()
            .map(|x| (x, largest_disjoint_below(lattice, x)))
            .max_by_key(|&(x, size)| (size, std::cmp::Reverse(x)))
            .expect("nontrivial lattice has a nonzero element");
        ClassVerdict::degenerate(true, Some(ClassWitness::LargestDisjointSet { bound, size }))
    };

    let f_v = {
        let (element, count) = spectrum
            .per_element
            .iter()
            .map(|e| (e.element, e.values.len()))
            .max_by_key(|&(x, count)| (count, std::cmp::Reverse(x)))
            .expect("nontrivial lattice has a nonzero element");
        ClassVerdict::degenerate(true, Some(ClassWitness::MostValues { element, count }))
    };

    let basis = find_basis(lattice)?;
    if let Some(b) = &basis {
        debug_assert!(is_disjoint_set(lattice, b.iter().copied().collect()));
    }
    let s = ClassVerdict::degenerate(basis.is_some(), basis.clone().map(ClassWitness::Basis));
    let s_omega = ClassVerdict::degenerate(basis.is_some(), basis.map(ClassWitness::Basis));

    let (projectable, failing) = is_projectable(lattice)?;
    let t = ClassVerdict::new(projectable, failing.map(ClassWitness::NotProjectable));

    let (consistent_ok, pair) = consistency_of(lattice, &spectrum);
    let consistent = ClassVerdict::new(
        consistent_ok,
        pair.map(|(x, y)| ClassWitness::Inconsistent {
            lower: x,
            upper: y,
            lower_count: spectrum.count(x),
            upper_count: spectrum.count(y),
        }),
    );

    // Polars are enumerated to make sure the polar machinery accepts the
    // lattice before anything downstream relies on it.
    enumerate_polars(lattice)?;

    Ok(ClassReport {
        trivial: false,
        a,
        b,
        max_minimal_primes_under_prime: max_under,
        minimal_prime_count: minimal.len(),
        b_omega,
        c,
        c_omega,
        d,
        e,
        f,
        f_v,
        s,
        s_omega,
        t,
        consistent,
    })
}

fn ideals_members(ideals: &IdealLattice) -> Vec<ElemSet> {
    ideals.iter().map(|i| i.members()).collect()
}

/// DCC on a finite family: the strict inclusion order is well founded, so
/// the verdict is true; the longest chain is recorded as the witness.
fn descending_chain_verdict(family: &[ElemSet]) -> ClassVerdict {
    ClassVerdict::degenerate(
        true,
        Some(ClassWitness::LongestDescendingChain(longest_descending_chain(family))),
    )
}
