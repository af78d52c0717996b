//! Enumeration of the closed sets of a closure operator on `{0..n}`
//! (Ganter's NextClosure), in lectic order.

use crate::lattice::FiniteLattice;
use crate::set::ElemSet;

pub fn closed_sets(n: usize, closure: impl Fn(ElemSet) -> ElemSet) -> Vec<ElemSet> {
    let mut out = Vec::new();
    let mut current = closure(ElemSet::EMPTY);
    out.push(current);
    'outer: loop {
        let mut prefix = current;
        for i in (0..n).rev() {
            if prefix.contains(i) {
                prefix.remove(i);
                continue;
            }
            let next = closure(prefix.with(i));
            let low = ElemSet::below_index(i);
            if next & low == prefix & low {
                current = next;
                out.push(current);
                continue 'outer;
            }
        }
        return out;
    }
}

/// Smallest ideal containing `set`: contains the bottom, is downward closed
/// and closed under binary joins.
pub fn ideal_closure(lattice: &FiniteLattice, set: ElemSet) -> ElemSet {
    let mut s = lattice.down_closure(set.with(lattice.bottom()));
    loop {
        let mut grown = s;
        for a in s.iter() {
            for b in s.iter().filter(|&b| b > a) {
                grown.insert(lattice.join(a, b));
            }
        }
        let grown = lattice.down_closure(grown);
        if grown == s {
            return s;
        }
        s = grown;
    }
}

/// Smallest upward closed, meet-closed set containing `set` (empty stays
/// empty).
pub fn filter_closure(lattice: &FiniteLattice, set: ElemSet) -> ElemSet {
    let mut s = lattice.up_closure(set);
    loop {
        let mut grown = s;
        for a in s.iter() {
            for b in s.iter().filter(|&b| b > a) {
                grown.insert(lattice.meet(a, b));
            }
        }
        let grown = lattice.up_closure(grown);
        if grown == s {
            return s;
        }
        s = grown;
    }
}
