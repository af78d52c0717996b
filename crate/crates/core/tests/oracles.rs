//! Library enumerations against brute-force recomputation.

mod common;

use common::*;
use latkit_core::closure::ideal_closure;
use latkit_core::gen::{corpus, enumerate_posets};
use latkit_core::ideals::{enumerate_ideals, enumerate_primes, ideal_join, minimal_primes, values};
use latkit_core::polars::polar_set;
use latkit_core::{canonical_form, ElemSet, FiniteLattice};

fn sample() -> Vec<FiniteLattice> {
    let mut out: Vec<FiniteLattice> = corpus(4)
        .unwrap()
        .into_iter()
        .map(|e| e.lattice)
        .filter(|l| l.n() <= 16)
        .collect();
    for src in [C3, B4, B4_PLUS_1, DIV12, B8, M3, N5] {
        out.push(lat(src));
    }
    out
}

fn bits(v: impl IntoIterator<Item = ElemSet>) -> Vec<u64> {
    let mut out: Vec<u64> = v.into_iter().map(ElemSet::bits).collect();
    out.sort_unstable();
    out
}

fn sorted(mut v: Vec<u64>) -> Vec<u64> {
    v.sort_unstable();
    v
}

#[test]
fn ideals_match_brute_force() {
    for l in sample() {
        let got = bits(enumerate_ideals(&l).iter().map(|i| i.members()));
        assert_eq!(got, sorted(brute_ideals(&l)), "{}", l.name());
        // Every ideal of a finite lattice is principal.
        assert_eq!(got.len(), l.n(), "{}", l.name());
    }
}

#[test]
fn primes_and_minimal_primes_match_brute_force() {
    for l in sample() {
        let primes = sorted(brute_primes(&l));
        assert_eq!(bits(enumerate_primes(&l).into_iter().map(|p| p.members())), primes, "{}", l.name());
        assert_eq!(
            bits(minimal_primes(&l).into_iter().map(|p| p.members())),
            sorted(minimal(&primes)),
            "{}",
            l.name()
        );
    }
}

#[test]
fn values_match_brute_force() {
    for l in sample() {
        for x in l.nonzero().iter() {
            let got = bits(values(&l, x).unwrap().into_iter().map(|v| v.members()));
            assert_eq!(got, sorted(brute_values(&l, x)), "{} x={}", l.name(), l.label(x));
        }
    }
}

#[test]
fn polars_match_brute_force() {
    for l in sample().into_iter().filter(|l| l.n() <= 8) {
        for a in 1u64..1 << l.n() {
            assert_eq!(
                polar_set(&l, ElemSet::from_bits(a)).bits(),
                brute_polar(&l, a),
                "{}",
                l.name()
            );
        }
    }
}

#[test]
fn ideal_join_is_least_ideal_above_union() {
    for l in sample().into_iter().filter(|l| latkit_core::is_distributive(l).holds) {
        let ideals: Vec<_> = enumerate_ideals(&l).iter().collect();
        let brute = brute_ideals(&l);
        for &i in &ideals {
            for &j in &ideals {
                let joined = ideal_join(&l, i, j).unwrap().members();
                let least = brute
                    .iter()
                    .copied()
                    .filter(|&k| k & (i.members() | j.members()).bits() == (i.members() | j.members()).bits())
                    .min_by_key(|k| k.count_ones())
                    .unwrap();
                assert_eq!(joined.bits(), least);
                assert_eq!(ideal_closure(&l, i.members() | j.members()), joined);
            }
        }
    }
}

#[test]
fn poset_counts_match_permutation_oracle() {
    for (n, expected) in [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)] {
        assert_eq!(brute_poset_count(n), expected, "oracle n={n}");
        assert_eq!(enumerate_posets(n).unwrap().len(), expected, "enumerator n={n}");
    }
}

#[test]
fn canonical_form_agrees_with_brute_isomorphism() {
    let lattices: Vec<FiniteLattice> = sample().into_iter().filter(|l| l.n() <= 7).collect();
    for a in &lattices {
        for b in &lattices {
            assert_eq!(
                canonical_form(a) == canonical_form(b),
                brute_isomorphic(a, b),
                "{} vs {}",
                a.name(),
                b.name()
            );
        }
    }
}
