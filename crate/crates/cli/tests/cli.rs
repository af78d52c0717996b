mod common;

use std::collections::BTreeSet;
use std::fs;

use common::{exit_table, fixture, golden_path, latkit, GOLDEN, LATTICES};
use latkit_cli::document::AnalysisDocument;
use latkit_cli::render::{flatten, parse_text};
use latkit_cli::SweepDocument;
use latkit_core::{canonical_hex, emit_lattice, gen_named, parse_lattice, LatticeFormat, TheoremId, Verdict};

#[test]
fn exit_codes_follow_the_table() {
    for (args, want) in exit_table() {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let run = latkit(&args);
        assert_eq!(run.code, want, "latkit {args:?}\nstderr: {}", run.stderr);
        if want != 0 && want != 4 {
            assert!(run.stderr.starts_with("error"), "{args:?}: {}", run.stderr);
        }
    }
}

#[test]
fn invalid_lattices_explain_themselves() {
    let run = latkit(&["analyze", &fixture("broken.lat")]);
    assert!(run.stderr.contains("cycle"), "{}", run.stderr);
    let run = latkit(&["analyze", &fixture("nonlattice.lat")]);
    assert!(run.stderr.contains("not a lattice"), "{}", run.stderr);
}

#[test]
fn golden_documents_are_byte_exact() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for name in GOLDEN {
        let run = latkit(&["analyze", &fixture(&format!("{name}.lat")), "--json"]);
        assert_eq!(run.code, 0, "{name}: {}", run.stderr);
        let path = golden_path(name);
        if update {
            fs::write(&path, &run.stdout).unwrap();
        }
        let want = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(run.stdout, want, "{name} differs from its golden file");
    }
}

#[test]
fn analysis_documents_round_trip() {
    for name in LATTICES {
        let run = latkit(&["analyze", &fixture(name), "--json"]);
        let doc: AnalysisDocument = serde_json::from_str(&run.stdout).expect("document parses");
        let again = latkit_cli::render::to_json(&doc);
        assert_eq!(again, run.stdout, "{name}");
        assert_eq!(serde_json::from_str::<AnalysisDocument>(&again).unwrap(), doc);
    }
}

#[test]
fn lattice_files_round_trip_in_both_formats() {
    for name in LATTICES {
        let src = fs::read_to_string(fixture(name)).unwrap();
        let lattice = parse_lattice(&src, LatticeFormat::detect(&src)).unwrap();
        for format in [LatticeFormat::Lat, LatticeFormat::Json] {
            let emitted = emit_lattice(&lattice, format);
            let back = parse_lattice(&emitted, format).unwrap();
            assert_eq!(emit_lattice(&back, format), emitted, "{name}");
            assert_eq!(back.labels(), lattice.labels());
            assert_eq!(back.name(), lattice.name());
            for x in 0..lattice.n() {
                assert_eq!(back.down(x), lattice.down(x), "{name}");
            }
        }
    }
}

#[test]
fn text_output_projects_the_json() {
    for name in LATTICES {
        let json = latkit(&["analyze", &fixture(name), "--json", "--audit", "all"]);
        let text = latkit(&["analyze", &fixture(name), "--text", "--audit", "all"]);
        if json.code == 3 {
            assert_eq!(text.code, 3);
            continue;
        }
        let value: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
        assert_eq!(parse_text(&text.stdout).expect("path: value lines"), flatten(&value), "{name}");
    }
}

#[test]
fn non_decomposable_documents_have_no_class_section() {
    let run = latkit(&["analyze", &fixture("m3.lat")]);
    let doc: AnalysisDocument = serde_json::from_str(&run.stdout).unwrap();
    assert!(!doc.decomposable.holds);
    assert!(doc.decomposable.failure.is_some());
    assert!(doc.classes.is_none() && doc.values.is_none() && doc.polars.is_none());
}

#[test]
fn eval_examples() {
    let run = latkit(&["eval", &fixture("b4.lat"), "polar({a})"]);
    assert_eq!((run.code, run.stdout.as_str()), (0, "{0, b}\n"));
    let run = latkit(&["eval", &fixture("div12.lat"), "val(6)"]);
    assert_eq!(run.stdout, "{1, 3}\n{1, 2, 4}\n");
    let run = latkit(&["eval", &fixture("c3.lat"), "is(A)"]);
    assert_eq!(run.stdout, "false\n");
    let run = latkit(&["eval", &fixture("div12.lat"), "join(meet(4, 6), 3)"]);
    assert_eq!(run.stdout, "6\n");
    let run = latkit(&["eval", &fixture("b8.lat"), "dpolar({p})"]);
    assert_eq!(run.stdout, "{0, p}\n");
    let run = latkit(&["eval", &fixture("c3.lat"), "val(0)"]);
    assert_eq!(run.code, 1);
    let run = latkit(&["eval", &fixture("b4.lat"), "polar({a}"]);
    assert!(run.stderr.contains("column 10"), "{}", run.stderr);
    let run = latkit(&["eval", &fixture("b4.lat"), "polar(consistent())"]);
    assert!(run.stderr.contains("type mismatch"), "{}", run.stderr);
}

#[test]
fn sweep_examples() {
    let run = latkit(&["sweep", "--max-poset", "3", "--theorems", "all", "--json"]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let doc: SweepDocument = serde_json::from_str(&run.stdout).unwrap();
    let c3 = canonical_hex(&gen_named("chain:3").unwrap());
    assert!(doc
        .report
        .failures
        .iter()
        .any(|f| f.theorem == TheoremId::BoundedDisjointSets && f.canonical == c3));
    assert!(doc.manifest_check.is_clean());

    let run = latkit(&["sweep", "--max-poset", "1"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("manifest: matches"));

    let run = latkit(&["sweep", "--max-poset", "9"]);
    assert_eq!(run.code, 1);
}

#[test]
fn sweep_without_allowances_reports_new_findings() {
    let run = latkit(&["sweep", "--max-poset", "3", "--manifest", &common::empty_manifest()]);
    assert_eq!(run.code, 4);
    assert!(run.stderr.contains("unexpected failure: T7.2"), "{}", run.stderr);
}

#[test]
fn sweep_flags_pins_that_stop_failing() {
    let path = std::env::temp_dir().join(format!("latkit-pin-{}.json", std::process::id()));
    fs::write(
        &path,
        r#"{"expected_failures": [{"theorem": "T7.2", "must_fail_on": ["chain:3"]},
            {"theorem": "L3.1", "must_fail_on": ["boolean:2"]}]}"#,
    )
    .unwrap();
    let run = latkit(&["sweep", "--max-poset", "2", "--manifest", &path.display().to_string()]);
    assert_eq!(run.code, 4);
    assert!(run.stderr.contains("did not occur: L3.1 @ boolean:2"), "{}", run.stderr);
    // Restricting the theorems drops the pin from consideration.
    let run = latkit(&[
        "sweep",
        "--max-poset",
        "2",
        "--theorems",
        "T7.2",
        "--manifest",
        &path.display().to_string(),
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
}

#[test]
fn sweep_writes_the_report_file() {
    let path = std::env::temp_dir().join(format!("latkit-sweep-{}.json", std::process::id()));
    let run = latkit(&["sweep", "--max-poset", "2", "--out", &path.display().to_string()]);
    assert_eq!(run.code, 0);
    let doc: SweepDocument = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc.max_poset, 2);
    assert_eq!(doc.theorems, TheoremId::ALL.to_vec());
    let _ = fs::remove_file(path);
}

#[test]
fn audit_reports_are_registry_ordered() {
    let run = latkit(&["audit", &fixture("c3.lat"), "--theorems", "T7.2,L3.1"]);
    assert_eq!(run.code, 0);
    let reports: Vec<latkit_core::AuditReport> = serde_json::from_str(&run.stdout).unwrap();
    let ids: Vec<TheoremId> = reports.iter().map(|r| r.theorem).collect();
    assert_eq!(ids, vec![TheoremId::PrimeAnnihilator, TheoremId::BoundedDisjointSets]);
    assert_eq!(reports[1].verdict, Verdict::Fails);
}

#[test]
fn gen_output_reparses() {
    let run = latkit(&["gen", "product:chain:2*boolean:2"]);
    let l = parse_lattice(&run.stdout, LatticeFormat::Lat).unwrap();
    assert_eq!(l.n(), 8);
    let run = latkit(&["gen", "plustop:boolean:2", "--json"]);
    let l = parse_lattice(&run.stdout, LatticeFormat::Json).unwrap();
    assert_eq!(canonical_hex(&l), canonical_hex(&gen_named("plustop:boolean:2").unwrap()));
    let run = latkit(&["gen", "--posets", "3"]);
    let names: BTreeSet<&str> = run.stdout.lines().filter(|l| l.starts_with("poset ")).collect();
    assert_eq!(names.len(), 5);
}

#[test]
fn element_cap_is_read_from_the_environment() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(["analyze", &fixture("b8.lat")])
        .env("LATKIT_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
