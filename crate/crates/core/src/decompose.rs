//! Distributivity and decomposability decision procedures.

use serde::{Deserialize, Serialize};

use crate::lattice::FiniteLattice;

/// Outcome of the distributive-law check. `counterexample` is the first
/// violating triple `(a, b, c)` in lexicographic element order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distributivity {
    pub holds: bool,
    pub counterexample: Option<(usize, usize, usize)>,
}

/// Checks `a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c)` over all triples.
pub fn is_distributive(lattice: &FiniteLattice) -> Distributivity {
    first_violation(lattice, |a, b, c| {
        lattice.meet(a, lattice.join(b, c)) == lattice.join(lattice.meet(a, b), lattice.meet(a, c))
    })
}

/// The dual law `a ∨ (b ∧ c) = (a ∨ b) ∧ (a ∨ c)`. Equivalent to
/// [`is_distributive`] on lattices; kept as an independent self-check.
pub fn is_distributive_dual(lattice: &FiniteLattice) -> Distributivity {
    first_violation(lattice, |a, b, c| {
        lattice.join(a, lattice.meet(b, c)) == lattice.meet(lattice.join(a, b), lattice.join(a, c))
    })
}

fn first_violation(
    lattice: &FiniteLattice,
    law: impl Fn(usize, usize, usize) -> bool,
) -> Distributivity {
    let n = lattice.n();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !law(a, b, c) {
                    return Distributivity {
                        holds: false,
                        counterexample: Some((a, b, c)),
                    };
                }
            }
        }
    }
    Distributivity {
        holds: true,
        counterexample: None,
    }
}

/// Splitting of an incomparable pair: `a = abar ∨ (a∧b)`, `b = bbar ∨ (a∧b)`,
/// `abar ∧ bbar = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionWitness {
    pub a: usize,
    pub b: usize,
    pub abar: usize,
    pub bbar: usize,
}

impl DecompositionWitness {
    pub fn is_valid(&self, lattice: &FiniteLattice) -> bool {
        let m = lattice.meet(self.a, self.b);
        !lattice.comparable(self.a, self.b)
            && lattice.join(self.abar, m) == self.a
            && lattice.join(self.bbar, m) == self.b
            && lattice.meet(self.abar, self.bbar) == lattice.bottom()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposabilityFailure {
    NotDistributive { triple: (usize, usize, usize) },
    NoWitness { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposability {
    pub holds: bool,
    /// One witness per incomparable pair `a < b` (by index); only filled
    /// when every pair has one.
    pub witnesses: Vec<DecompositionWitness>,
    pub failure: Option<DecomposabilityFailure>,
}

/// Brute-force decomposability check. For every incomparable pair the
/// lexicographically least `(abar, bbar)` is reported. Candidates are drawn
/// from `(a]` and `(b]`, which is no restriction since `abar ≤ abar ∨ (a∧b)`.
pub fn is_decomposable(lattice: &FiniteLattice) -> Decomposability {
    let dist = is_distributive(lattice);
    if let Some(triple) = dist.counterexample {
        return Decomposability {
            holds: false,
            witnesses: Vec::new(),
            failure: Some(DecomposabilityFailure::NotDistributive { triple }),
        };
    }
    let n = lattice.n();
    let zero = lattice.bottom();
    let mut witnesses = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if lattice.comparable(a, b) {
                continue;
            }
            let m = lattice.meet(a, b);
            let found = lattice.down(a).iter().find_map(|abar| {
                if lattice.join(abar, m) != a {
                    return None;
                }
                lattice
                    .down(b)
                    .iter()
                    .find(|&bbar| lattice.join(bbar, m) == b && lattice.meet(abar, bbar) == zero)
                    .map(|bbar| DecompositionWitness { a, b, abar, bbar })
            });
            match found {
                Some(w) => witnesses.push(w),
                None => {
                    return Decomposability {
                        holds: false,
                        witnesses: Vec::new(),
                        failure: Some(DecomposabilityFailure::NoWitness { a, b }),
                    }
                }
            }
        }
    }
    Decomposability {
        holds: true,
        witnesses,
        failure: None,
    }
}

/// Structural shortcut: a distributive lattice whose join-irreducibles have
/// chains as principal up-sets (a root system). Not used for verdicts; the
/// tests cross-check it against [`is_decomposable`] over the corpus.
pub fn is_root_system(lattice: &FiniteLattice) -> bool {
    if !is_distributive(lattice).holds {
        return false;
    }
    let ji = lattice.join_irreducibles();
    ji.iter().all(|j| lattice.is_chain(lattice.up(j) & ji))
}
