//! Helpers for driving the `latkit` binary.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn latkit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_latkit"))
        .args(args)
        .env_remove("LATKIT_MAX_N")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exited normally"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn fixture(name: &str) -> String {
    manifest_dir().join("tests/fixtures").join(name).display().to_string()
}

pub fn golden_path(name: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.json"))
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Fixtures that parse as lattices.
pub const LATTICES: &[&str] = &[
    "b4.lat",
    "b4plus1.lat",
    "b8.lat",
    "c3.lat",
    "div12.lat",
    "m3.lat",
    "n5.json",
];

/// Fixtures with golden `analyze --json` output.
pub const GOLDEN: &[&str] = &["b4plus1", "b8", "c3", "div12", "m3"];

/// `(arguments, expected exit code)` covering every row of the exit-code
/// table.
pub fn exit_table() -> Vec<(Vec<String>, i32)> {
    let f = fixture;
    let rows: Vec<(Vec<String>, i32)> = vec![
        (vec!["analyze".into(), f("div12.lat")], 0),
        (vec!["analyze".into(), f("m3.lat")], 0),
        (vec!["analyze".into(), f("n5.json"), "--text".into()], 0),
        (vec!["analyze".into(), f("div12.lat"), "--audit".into(), "all".into()], 0),
        (vec!["audit".into(), f("b4.lat")], 0),
        (vec!["eval".into(), f("b4.lat"), "polar({a})".into()], 0),
        (vec!["gen".into(), "product:chain:2*boolean:2".into()], 0),
        (vec!["sweep".into(), "--max-poset".into(), "3".into()], 0),
        (vec!["analyze".into(), f("missing.lat")], 1),
        (vec!["analyze".into(), f("div12.lat"), "--audit".into(), "X9.9".into()], 1),
        (vec!["frobnicate".into()], 1),
        (vec!["gen".into(), "chain:0".into()], 1),
        (vec!["gen".into(), "boolean:7".into()], 1),
        (vec!["sweep".into(), "--max-poset".into(), "9".into()], 1),
        (vec!["eval".into(), f("b4.lat"), "polar(a)".into()], 1),
        (vec!["eval".into(), f("b4.lat"), "polar({a}".into()], 1),
        (vec!["eval".into(), f("b4.lat"), "ideal(z)".into()], 1),
        (vec!["analyze".into(), f("broken.lat")], 2),
        (vec!["analyze".into(), f("nonlattice.lat")], 2),
        (vec!["eval".into(), f("broken.lat"), "primes()".into()], 2),
        (vec!["analyze".into(), f("m3.lat"), "--audit".into(), "all".into()], 3),
        (vec!["audit".into(), f("n5.json")], 3),
        (vec!["eval".into(), f("m3.lat"), "is(B)".into()], 3),
        (vec!["audit".into(), f("c3.lat"), "--manifest".into(), empty_manifest()], 4),
    ];
    rows
}

/// A manifest that allows no failures, written once per process.
pub fn empty_manifest() -> String {
    let path = std::env::temp_dir().join(format!("latkit-empty-manifest-{}.json", std::process::id()));
    if !path.exists() {
        std::fs::write(&path, "{\"expected_failures\": []}\n").expect("temp dir is writable");
    }
    path.display().to_string()
}
