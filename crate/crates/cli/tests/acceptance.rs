//! Acceptance criteria, one pass/fail line each. Runs without the libtest
//! harness so the lines are always printed.

mod common;
#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::collections::BTreeSet;
use std::fs;
use std::time::{Duration, Instant};

use anyhow::{ensure, Context, Result};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use latkit_cli::document::AnalysisDocument;
use latkit_cli::SweepDocument;
use latkit_core::audit::TheoremId;
use latkit_core::gen::{corpus, enumerate_posets};
use latkit_core::ideals::{enumerate_ideals, enumerate_primes, ideal_join, value_spectrum, values, IdealSet};
use latkit_core::polars::polar_set;
use latkit_core::{canonical_form, canonical_hex, downset_lattice, gen_named, is_distributive, AuditReport, ElemSet, Verdict};

use common::{exit_table, fixture, golden_path, latkit, GOLDEN, LATTICES};

fn timed(limit: Duration, f: impl FnOnce() -> Result<String>) -> Result<String> {
    let start = Instant::now();
    let detail = f()?;
    let elapsed = start.elapsed();
    ensure!(elapsed < limit, "took {elapsed:.2?}, limit {limit:?}");
    Ok(format!("{detail} ({elapsed:.2?})"))
}

fn corpus_integrity() -> Result<String> {
    timed(Duration::from_secs(10), || {
        let want = [1, 2, 5, 16, 63];
        let mut seen = BTreeSet::new();
        for (n, &expected) in (1..=5).zip(&want) {
            let posets = enumerate_posets(n)?;
            let brute = oracle::brute_poset_count(n);
            ensure!(
                posets.len() == expected && brute == expected,
                "n={n}: enumerator {}, brute force {brute}, expected {expected}",
                posets.len()
            );
            for p in &posets {
                ensure!(seen.insert(p.canonical()), "duplicate poset {}", p.name());
                let l = downset_lattice(p)?;
                ensure!(is_distributive(&l).holds, "down-set lattice of {} is not distributive", p.name());
            }
        }
        let entries = corpus(5)?;
        let forms: BTreeSet<Vec<u8>> = entries.iter().map(|e| canonical_form(&e.lattice)).collect();
        ensure!(forms.len() == entries.len(), "canonical duplicates in corpus(5)");
        Ok(format!("posets 1,2,5,16,63; {} distinct lattices", entries.len()))
    })
}

const NEVER_FAIL: &[TheoremId] = &[
    TheoremId::PrimeAnnihilator,
    TheoremId::DisjointSeparators,
    TheoremId::BoundedMinimalPrimes,
    TheoremId::MinimalPrimeComplement,
    TheoremId::TotallyOrderedIdeal,
    TheoremId::MinimalPrimeCriteria,
    TheoremId::BasisCriteria,
    TheoremId::PolarMinimalPrimes,
    TheoremId::RadicalCriteria,
    TheoremId::BasisPolarDuality,
    TheoremId::FiniteBasisCriteria,
    TheoremId::LargeIdealUnit,
    TheoremId::CompactCriteria,
    TheoremId::CountablyCompactChains,
    TheoremId::EssentialSpectrum,
    TheoremId::IdealChainCondition,
    TheoremId::SpecialDecomposition,
    TheoremId::FiniteValuesDisjoint,
    TheoremId::ConsistencyCriteria,
];

fn theorem_sweep() -> Result<String> {
    timed(Duration::from_secs(60), || {
        let run = latkit(&["sweep", "--max-poset", "5", "--theorems", "all", "--json"]);
        ensure!(run.code == 0, "sweep exited {}: {}", run.code, run.stderr);
        let doc: SweepDocument = serde_json::from_str(&run.stdout)?;
        let r = &doc.report;
        for t in NEVER_FAIL {
            let tally = r.tallies.get(t).with_context(|| format!("{t} missing"))?;
            ensure!(tally.fails == 0, "{t} fails on {} lattices", tally.fails);
            ensure!(
                tally.holds + tally.vacuous + tally.degenerate == r.audited,
                "{t} was not evaluated on every lattice"
            );
        }
        let c3 = canonical_hex(&gen_named("chain:3")?);
        ensure!(
            r.failures
                .iter()
                .any(|f| f.theorem == TheoremId::BoundedDisjointSets && f.canonical == c3),
            "T7.2 does not fail on C3"
        );

        let run = latkit(&["audit", &fixture("c3.lat"), "--theorems", "T7.2"]);
        let reports: Vec<AuditReport> = serde_json::from_str(&run.stdout)?;
        let witness = reports[0].witness.as_ref().context("no witness on C3")?;
        ensure!(reports[0].verdict == Verdict::Fails, "C3 verdict {}", reports[0].verdict);
        ensure!(witness.sets == vec![vec!["0".to_string(), "a".to_string()]], "witness {:?}", witness.sets);
        let run = latkit(&["analyze", &fixture("c3.lat")]);
        let doc: AnalysisDocument = serde_json::from_str(&run.stdout)?;
        let classes = doc.classes.context("C3 has no class section")?;
        ensure!(classes.f.member && !classes.a.member, "C3 class row F/A wrong");
        Ok(format!(
            "{} decomposable of {} lattices; only T7.2 fails ({} lattices, incl. C3 with prime {{0,a}})",
            r.audited,
            r.lattices,
            r.failures.len()
        ))
    })
}

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn golden(name: &str) -> Result<AnalysisDocument> {
    let run = latkit(&["analyze", &fixture(&format!("{name}.lat")), "--json"]);
    let want = fs::read_to_string(golden_path(name))?;
    ensure!(run.stdout == want, "{name}: output differs from golden file");
    Ok(serde_json::from_str(&run.stdout)?)
}

fn hand_verified_fixtures() -> Result<String> {
    for name in GOLDEN {
        golden(name)?;
    }

    let d = golden("div12")?;
    ensure!(d.ideals.count == 6, "div12 |Ide| = {}", d.ideals.count);
    ensure!(
        d.spectrum.primes == vec![labels(&["1", "3"]), labels(&["1", "2", "4"]), labels(&["1", "2", "3", "6"])],
        "div12 Spe = {:?}",
        d.spectrum.primes
    );
    ensure!(d.spectrum.minimal_primes.len() == 2, "div12 MinSpe");
    let v = d.values.context("div12 values")?;
    let count = |x: &str| v.per_element.iter().find(|e| e.element == x).map(|e| e.count);
    ensure!(count("6") == Some(2) && count("12") == Some(2), "div12 v(6), v(12)");
    let c = d.classes.context("div12 classes")?;
    ensure!(c.b.member && c.t.member && c.consistent.member && !c.a.member, "div12 class row");

    let d = golden("b4plus1")?;
    let c = d.classes.context("b4plus1 classes")?;
    ensure!(!c.t.member, "b4plus1 T");
    ensure!(
        c.t.witness == Some(latkit_cli::document::WitnessDoc::NotProjectable { element: "a".into() }),
        "b4plus1 T witness {:?}",
        c.t.witness
    );
    ensure!(!c.b.member && !c.consistent.member, "b4plus1 B / consistent");
    ensure!(
        matches!(&c.consistent.witness,
            Some(latkit_cli::document::WitnessDoc::Inconsistent { lower, upper, .. }) if lower == "1" && upper == "t"),
        "b4plus1 inconsistent pair {:?}",
        c.consistent.witness
    );
    let v = d.values.context("b4plus1 values")?;
    ensure!(v.radical == labels(&["0"]), "b4plus1 Rad = {:?}", v.radical);
    ensure!(v.essential_values.len() == 3, "b4plus1 |E| = {}", v.essential_values.len());
    let b4 = oracle::lat(oracle::B4_PLUS_1);
    let a = IdealSet::new(&b4, ElemSet::from_bits(oracle::set(&b4, &["0", "a"])))?;
    let b = IdealSet::new(&b4, ElemSet::from_bits(oracle::set(&b4, &["0", "b"])))?;
    ensure!(
        ideal_join(&b4, a, b)?.members() == ElemSet::from_bits(oracle::set(&b4, &["0", "a", "b", "1"])),
        "b4plus1 {{0,a}} v {{0,b}}"
    );

    let d = golden("b8")?;
    let p = d.polars.context("b8 polars")?;
    ensure!(p.basis == Some(labels(&["p", "q", "r"])), "b8 basis {:?}", p.basis);
    ensure!(p.count == 8, "b8 |P(L)| = {}", p.count);
    ensure!(
        p.ultrafilters.len() == 3 && p.ultrafilters.iter().all(|u| u.principal.is_some()),
        "b8 ultrafilters"
    );
    ensure!(
        d.spectrum.primes == d.spectrum.minimal_primes && d.spectrum.primes.len() == 3,
        "b8 Spe = MinSpe"
    );
    Ok(format!("{} golden files byte-exact; div12, B4+1, B8 rows match", GOLDEN.len()))
}

fn structural_properties() -> Result<String> {
    let small = corpus(4)?;
    let mut checked = 0usize;
    for e in &small {
        let l = &e.lattice;
        let n = l.n();
        for mask in 0..(1u64 << n) {
            let a = ElemSet::from_bits(mask);
            let p = polar_set(l, a);
            ensure!(p.bits() == oracle::brute_polar(l, mask), "{}: polar of {mask:#x}", l.name());
            ensure!(polar_set(l, polar_set(l, p)) == p, "{}: polar involution", l.name());
            for x in (0..n).filter(|&x| !a.contains(x)) {
                ensure!(polar_set(l, a.with(x)).is_subset(p), "{}: antitonicity", l.name());
            }
        }
        let ideals = enumerate_ideals(l);
        let brute: BTreeSet<u64> = oracle::brute_ideals(l).into_iter().collect();
        for i in ideals.iter() {
            for j in ideals.iter() {
                let k = ideal_join(l, i, j)?;
                let union = i.members().union(j.members()).bits();
                let least = brute
                    .iter()
                    .filter(|&&s| s & union == union)
                    .min_by_key(|s| s.count_ones())
                    .copied();
                ensure!(Some(k.members().bits()) == least, "{}: ideal_join", l.name());
            }
        }
        if !e.decomposable || l.is_trivial() {
            continue;
        }
        for x in (0..n).filter(|&x| !l.is_zero(x)) {
            let vals = values(l, x)?;
            for u in &vals {
                for w in &vals {
                    ensure!(u == w || !u.is_subset(*w), "{}: Val({}) not an antichain", l.name(), l.label(x));
                }
            }
            let mut got: Vec<u64> = vals.iter().map(|v| v.members().bits()).collect();
            got.sort();
            let mut want = oracle::brute_values(l, x);
            want.sort();
            ensure!(got == want, "{}: Val({}) differs from brute force", l.name(), l.label(x));
        }
        checked += 1;
    }

    let full = corpus(5)?;
    for e in full.iter().filter(|e| e.decomposable && !e.lattice.is_trivial()) {
        let l = &e.lattice;
        let spe: BTreeSet<ElemSet> = enumerate_primes(l).iter().map(|p| p.members()).collect();
        let v: BTreeSet<ElemSet> = value_spectrum(l)?.all_values.iter().map(|m| m.members()).collect();
        ensure!(spe == v, "{}: Spe != V", l.name());
    }

    let lattices: Vec<_> = full.iter().map(|e| e.lattice.clone()).collect();
    let mut runner = TestRunner::new(Config {
        cases: 200,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (0..lattices.len()).prop_flat_map(|i| {
        let n = lattices[i].n();
        (Just(i), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    });
    runner
        .run(&strategy, |(i, perm)| {
            let l = &lattices[i];
            prop_assert_eq!(canonical_form(&l.permuted(&perm)), canonical_form(l));
            Ok(())
        })
        .map_err(|e| anyhow::anyhow!("canonical form: {e}"))?;
    Ok(format!(
        "polars and joins exhaustive on {} lattices, values on {checked}; Spe = V on corpus(5); 200 relabelings",
        small.len()
    ))
}

fn cli_contract() -> Result<String> {
    let table = exit_table();
    for (args, want) in &table {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = latkit(&args);
        ensure!(run.code == *want, "latkit {args:?} exited {}, expected {want}", run.code);
    }
    for name in LATTICES {
        let src = fs::read_to_string(fixture(name))?;
        let l = latkit_core::parse_lattice(&src, latkit_core::LatticeFormat::detect(&src))?;
        for format in [latkit_core::LatticeFormat::Lat, latkit_core::LatticeFormat::Json] {
            let once = latkit_core::emit_lattice(&l, format);
            let twice = latkit_core::emit_lattice(&latkit_core::parse_lattice(&once, format)?, format);
            ensure!(once == twice, "{name}: lattice round trip");
        }
        let run = latkit(&["analyze", &fixture(name), "--json"]);
        let doc: AnalysisDocument = serde_json::from_str(&run.stdout)?;
        ensure!(latkit_cli::render::to_json(&doc) == run.stdout, "{name}: document round trip");
    }
    Ok(format!("{} exit-code cases; {} fixtures round-trip", table.len(), LATTICES.len()))
}

type Check = fn() -> Result<String>;

fn main() {
    let criteria: [(&str, Check); 5] = [
        ("corpus integrity", corpus_integrity),
        ("theorem equivalence sweep", theorem_sweep),
        ("hand-verified fixtures", hand_verified_fixtures),
        ("structural property suites", structural_properties),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {e:#}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
