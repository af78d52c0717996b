//! Brute-force oracles shared by the integration tests. Everything here
//! works from the order relation alone and ignores the library's own
//! ideal, value and canonical-form code.

#![allow(dead_code)]

use latkit_core::{parse_lattice, FiniteLattice, LatticeFormat};

pub fn lat(src: &str) -> FiniteLattice {
    parse_lattice(src, LatticeFormat::Lat).expect("fixture parses")
}

pub const C3: &str = "lattice c3\nelements 0 a 1\ncovers 0<a a<1\n";
pub const B4: &str = "lattice b4\nelements 0 a b 1\ncovers 0<a 0<b a<1 b<1\n";
pub const B4_PLUS_1: &str = "lattice b4plus1\nelements 0 a b 1 t\ncovers 0<a 0<b a<1 b<1 1<t\n";
pub const DIV12: &str =
    "lattice div12\nelements 1 2 3 4 6 12\ncovers 1<2 1<3 2<4 2<6 3<6 4<12 6<12\n";
pub const B8: &str = "lattice b8\nelements 0 p q r pq pr qr 1\n\
    covers 0<p 0<q 0<r p<pq p<pr q<pq q<qr r<pr r<qr pq<1 pr<1 qr<1\n";
pub const M3: &str = "lattice m3\nelements 0 a b c 1\ncovers 0<a 0<b 0<c a<1 b<1 c<1\n";
pub const N5: &str = "lattice n5\nelements 0 a b c 1\ncovers 0<a a<b b<1 0<c c<1\n";

/// Elements by label.
pub fn set(l: &FiniteLattice, labels: &[&str]) -> u64 {
    labels
        .iter()
        .map(|s| 1u64 << l.index_of(s).unwrap_or_else(|| panic!("no label {s}")))
        .fold(0, |a, b| a | b)
}

fn members(mask: u64, n: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |i| mask >> i & 1 == 1)
}

/// Least upper bound by scanning the order.
pub fn join(l: &FiniteLattice, x: usize, y: usize) -> usize {
    let ub: Vec<usize> = (0..l.n()).filter(|&z| l.leq(x, z) && l.leq(y, z)).collect();
    *ub.iter().find(|&&z| ub.iter().all(|&w| l.leq(z, w))).unwrap()
}

pub fn meet(l: &FiniteLattice, x: usize, y: usize) -> usize {
    let lb: Vec<usize> = (0..l.n()).filter(|&z| l.leq(z, x) && l.leq(z, y)).collect();
    *lb.iter().find(|&&z| lb.iter().all(|&w| l.leq(w, z))).unwrap()
}

pub fn bottom(l: &FiniteLattice) -> usize {
    (0..l.n()).find(|&z| (0..l.n()).all(|w| l.leq(z, w))).unwrap()
}

/// Every subset of the carrier that is a nonempty, down-closed,
/// join-closed set. Only for small carriers.
pub fn brute_ideals(l: &FiniteLattice) -> Vec<u64> {
    let n = l.n();
    assert!(n <= 16);
    (1u64..1 << n)
        .filter(|&s| {
            members(s, n).all(|x| (0..n).all(|y| !l.leq(y, x) || s >> y & 1 == 1))
                && members(s, n).all(|x| members(s, n).all(|y| s >> join(l, x, y) & 1 == 1))
        })
        .collect()
}

pub fn brute_primes(l: &FiniteLattice) -> Vec<u64> {
    let n = l.n();
    let full = (1u64 << n) - 1;
    brute_ideals(l)
        .into_iter()
        .filter(|&p| {
            p != full
                && (0..n).all(|a| {
                    (0..n).all(|b| p >> meet(l, a, b) & 1 == 0 || p >> a & 1 == 1 || p >> b & 1 == 1)
                })
        })
        .collect()
}

pub fn minimal(family: &[u64]) -> Vec<u64> {
    family
        .iter()
        .copied()
        .filter(|&s| !family.iter().any(|&t| t != s && t & s == t))
        .collect()
}

pub fn maximal(family: &[u64]) -> Vec<u64> {
    family
        .iter()
        .copied()
        .filter(|&s| !family.iter().any(|&t| t != s && t & s == s))
        .collect()
}

/// Ideals maximal among those missing `x`.
pub fn brute_values(l: &FiniteLattice, x: usize) -> Vec<u64> {
    let free: Vec<u64> = brute_ideals(l).into_iter().filter(|&i| i >> x & 1 == 0).collect();
    maximal(&free)
}

pub fn brute_polar(l: &FiniteLattice, a: u64) -> u64 {
    let z = bottom(l);
    (0..l.n())
        .filter(|&x| members(a, l.n()).all(|y| meet(l, x, y) == z))
        .fold(0, |acc, x| acc | 1 << x)
}

/// Naturally labelled strict orders on `0..n` (x < y only if x < y as
/// integers), deduplicated by the least relation image over all
/// permutations.
pub fn brute_poset_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut classes = std::collections::HashSet::new();
    for mask in 0u32..1 << pairs.len() {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let has = |x: usize, y: usize| rel.contains(&(x, y));
        let transitive = rel
            .iter()
            .all(|&(x, y)| (0..n).all(|z| !has(y, z) || has(x, z)));
        if !transitive {
            continue;
        }
        let key = perms
            .iter()
            .map(|p| {
                let mut image: Vec<(usize, usize)> = rel.iter().map(|&(x, y)| (p[x], p[y])).collect();
                image.sort();
                image
            })
            .min()
            .unwrap();
        classes.insert(key);
    }
    classes.len()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Order-isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    a.n() == b.n()
        && permutations(a.n()).iter().any(|p| {
            (0..a.n()).all(|x| (0..a.n()).all(|y| a.leq(x, y) == b.leq(p[x], p[y])))
        })
}
