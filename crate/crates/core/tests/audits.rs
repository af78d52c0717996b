//! Audit verdicts on small lattices, corpus sweeps, and sensitivity of the
//! harness to a perturbed code path.

mod common;

use common::*;
use latkit_core::audit::{audit, audit_all, audit_corpus, AuditContext, AuditError, TheoremId, Verdict};
use latkit_core::gen::{corpus, gen_named};
use latkit_core::FiniteLattice;

fn verdicts(l: &FiniteLattice) -> Vec<(TheoremId, Verdict)> {
    audit_all(l).unwrap().into_iter().map(|r| (r.theorem, r.verdict)).collect()
}

#[test]
fn b4_all_reports_hold() {
    let reports = audit_all(&lat(B4)).unwrap();
    assert_eq!(reports.len(), 20);
    assert!(reports.iter().all(|r| r.verdict != Verdict::Fails));
    let ids: Vec<TheoremId> = reports.iter().map(|r| r.theorem).collect();
    assert_eq!(ids, TheoremId::ALL);
}

#[test]
fn c3_fails_only_the_bounded_disjoint_statement() {
    let l = lat(C3);
    for (t, v) in verdicts(&l) {
        if t == TheoremId::BoundedDisjointSets {
            assert_eq!(v, Verdict::Fails);
        } else {
            assert_ne!(v, Verdict::Fails, "{t}");
        }
    }
    let r = audit(&l, "T7.2".parse().unwrap()).unwrap();
    let w = r.witness.unwrap();
    // F holds, A fails, V = S holds.
    assert_eq!(w.values, [true, false, true]);
    assert_eq!(w.sets, [vec!["0".to_string(), "a".to_string()]]);
}

#[test]
fn b4_plus_1_bounded_minimal_primes() {
    let l = lat(B4_PLUS_1);
    let r = audit(&l, TheoremId::BoundedMinimalPrimes).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    let n1 = &r.instances[0];
    assert_eq!(n1.label, "n = 1");
    assert!(!n1.values[0], "B fails");
    assert!(!n1.values[4], "disjoint polars do not join to L");
    assert!(n1.details.iter().any(|d| d.contains("{0, a, b, 1}")));
}

#[test]
fn b4_totally_ordered_ideal_rows() {
    let l = lat(B4);
    let r = audit(&l, TheoremId::TotallyOrderedIdeal).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    let row = |label: &str| r.instances.iter().find(|i| i.label == label).unwrap().values.clone();
    assert_eq!(row("I = {0, a}"), [true; 8]);
    assert_eq!(row("I = {0, a, b, 1}"), [false; 8]);
}

#[test]
fn div12_reports() {
    for (t, v) in verdicts(&lat(DIV12)) {
        // div12 is not in A, so the bounded-disjoint implication fails there
        // as it does on every non-Boolean decomposable lattice.
        assert_eq!(v == Verdict::Fails, t == TheoremId::BoundedDisjointSets, "{t}");
    }
    let r = audit(&lat(DIV12), TheoremId::ConsistencyCriteria).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert_eq!(r.instances[0].values, [true; 4]);
}

#[test]
fn trivial_lattice_is_vacuous() {
    let one = gen_named("chain:1").unwrap();
    assert!(verdicts(&one).iter().all(|&(_, v)| v == Verdict::Vacuous));
}

#[test]
fn non_decomposable_input_is_refused() {
    assert!(matches!(audit_all(&lat(M3)), Err(AuditError::NotDecomposable(_))));
    assert!(matches!(AuditContext::new(&lat(N5)), Err(AuditError::NotDecomposable(_))));
}

#[test]
fn corpus_sweep_to_five() {
    let lattices: Vec<FiniteLattice> = corpus(5).unwrap().into_iter().map(|e| e.lattice).collect();
    let report = audit_corpus(&lattices, &TheoremId::ALL).unwrap();
    assert_eq!(report.lattices, lattices.len());
    assert_eq!(report.audited + report.skipped, report.lattices);
    for (t, tally) in &report.tallies {
        if *t == TheoremId::BoundedDisjointSets {
            assert!(tally.fails > 0);
        } else {
            assert_eq!(tally.fails, 0, "{t}");
        }
    }
    let c3 = latkit_core::canonical_hex(&lat(C3));
    assert!(report
        .failures
        .iter()
        .any(|f| f.canonical == c3 && f.theorem == TheoremId::BoundedDisjointSets));
    let keys: Vec<&String> = report.failures.iter().map(|f| &f.canonical).collect();
    let mut sorted = keys.clone();
    sorted.sort_by_key(|k| hex_bytes(k));
    assert_eq!(keys, sorted);
}

fn hex_bytes(s: &str) -> Vec<u8> {
    (0..s.len()).step_by(2).map(|i| u8::from_str_radix(&s[i..i + 2], 16).unwrap()).collect()
}

#[test]
fn corpus_with_ds4_skips_it() {
    let ds4 = latkit_core::gen::downset_lattice(
        &latkit_core::gen::PosetSpec::parse("poset ds4\nelements p q r s\nrelations p<r q<r p<s\n").unwrap(),
    )
    .unwrap();
    let report = audit_corpus(&[ds4, lat(C3)], &TheoremId::ALL).unwrap();
    assert_eq!((report.lattices, report.audited, report.skipped), (2, 1, 1));
}

#[test]
fn perturbed_minimal_primes_are_detected() {
    let l = lat(DIV12);
    let mut ctx = AuditContext::new(&l).unwrap();
    assert_eq!(ctx.audit(TheoremId::MinimalPrimeCriteria).unwrap().verdict, Verdict::Holds);
    assert_eq!(ctx.audit(TheoremId::PrimeAnnihilator).unwrap().verdict, Verdict::Holds);
    // Pretend every prime is minimal: the union-of-polars side disagrees.
    let honest = ctx.minimal_primes.clone();
    ctx.minimal_primes = ctx.primes.clone();
    assert_eq!(ctx.audit(TheoremId::MinimalPrimeCriteria).unwrap().verdict, Verdict::Fails);
    // Intersections ignore extra primes above a minimal one, so this
    // identity only notices a missing minimal prime.
    assert_eq!(ctx.audit(TheoremId::PrimeAnnihilator).unwrap().verdict, Verdict::Holds);
    ctx.minimal_primes = honest[1..].to_vec();
    assert_eq!(ctx.audit(TheoremId::PrimeAnnihilator).unwrap().verdict, Verdict::Fails);
}

#[test]
fn perturbed_class_verdict_is_detected() {
    let l = lat(B4_PLUS_1);
    let mut ctx = AuditContext::new(&l).unwrap();
    assert_eq!(ctx.audit(TheoremId::ConsistencyCriteria).unwrap().verdict, Verdict::Holds);
    ctx.classes.t.member = true;
    let r = ctx.audit(TheoremId::ConsistencyCriteria).unwrap();
    assert_eq!(r.verdict, Verdict::Fails);
    assert_eq!(r.witness.unwrap().values, [true, true, false, false]);
}

#[test]
fn perturbed_specials_are_detected() {
    let l = lat(B4);
    let mut ctx = AuditContext::new(&l).unwrap();
    let top = l.top();
    ctx.values.specials.push(top);
    ctx.values.per_element.iter_mut().find(|e| e.element == top).unwrap().values.truncate(1);
    assert_eq!(ctx.audit(TheoremId::TotallyOrderedIdeal).unwrap().verdict, Verdict::Fails);
}

#[test]
fn verdicts_stable_under_relabeling() {
    for spec in ["divisor:12", "plustop:boolean:2", "product:chain:3*chain:2", "chain:4"] {
        let l = gen_named(spec).unwrap();
        let n = l.n();
        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 3) % n).collect();
        let perm = if perm.iter().collect::<std::collections::HashSet<_>>().len() == n {
            perm
        } else {
            (0..n).rev().collect()
        };
        assert_eq!(verdicts(&l), verdicts(&l.permuted(&perm)), "{spec}");
    }
}
