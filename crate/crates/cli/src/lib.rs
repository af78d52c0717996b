//! Command-line front end for latkit.
//!
//! Exit codes: 0 ok, 1 usage or cap, 2 invalid lattice, 3 lattice not
//! decomposable where a decomposable one is required, 4 audit outcome not
//! covered by the expected-failure manifest.

pub mod document;
pub mod manifest;
pub mod query;
pub mod render;

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use latkit_core::audit::{audit_many, AuditError, AuditReport, CorpusReport, TheoremId, Verdict};
use latkit_core::gen::{corpus, enumerate_posets};
use latkit_core::{
    emit_lattice, gen_named, is_decomposable, parse_lattice, FiniteLattice, GenError, LatticeError, LatticeFormat,
};

use document::{analyze, AnalysisError};
use manifest::{Manifest, ManifestCheck, ManifestError};
use query::QueryError;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_UNEXPECTED: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "latkit", version, about = "Analyze finite distributive lattices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full structural report for a lattice file
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        output: OutputFlags,
        /// Also audit these statements (comma-separated ids, or `all`)
        #[arg(long, value_name = "IDS")]
        audit: Option<String>,
    },
    /// Audit statements on one lattice
    Audit {
        file: PathBuf,
        /// Comma-separated ids, or `all`
        #[arg(long, default_value = "all", value_name = "IDS")]
        theorems: String,
        #[command(flatten)]
        output: OutputFlags,
        /// Expected-failure manifest (defaults to the bundled one)
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Print a generated lattice, or the posets of a given size
    Gen {
        /// Generator spec, e.g. `product:chain:2*boolean:2`
        #[arg(required_unless_present = "posets", conflicts_with = "posets")]
        spec: Option<String>,
        /// Emit JSON instead of the text format
        #[arg(long)]
        json: bool,
        /// List the posets with this many elements, up to isomorphism
        #[arg(long, value_name = "N")]
        posets: Option<usize>,
    },
    /// Audit every decomposable lattice of the corpus
    Sweep {
        /// Largest poset size in the corpus
        #[arg(long, value_name = "N")]
        max_poset: usize,
        /// Comma-separated ids, or `all`
        #[arg(long, default_value = "all", value_name = "IDS")]
        theorems: String,
        /// Also write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the JSON report instead of the table
        #[arg(long)]
        json: bool,
        /// Expected-failure manifest (defaults to the bundled one)
        #[arg(long)]
        manifest: Option<PathBuf>,
    },
    /// Evaluate a query expression against a lattice
    Eval { file: PathBuf, expr: String },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct OutputFlags {
    /// JSON output (default)
    #[arg(long, conflicts_with = "text")]
    pub json: bool,
    /// Flattened `path: value` output
    #[arg(long)]
    pub text: bool,
}

impl OutputFlags {
    fn render<T: Serialize>(self, doc: &T) -> String {
        if self.text {
            render::to_text(doc)
        } else {
            render::to_json(doc)
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read `{path}`: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {source}")]
    Lattice { path: String, source: LatticeError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{0}: lattice is not decomposable")]
    NotDecomposable(String),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Audit(#[from] AuditError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Manifest(#[from] ManifestError),
    #[error(transparent)]
    Output(#[from] anyhow::Error),
}

fn lattice_error_code(e: &LatticeError) -> u8 {
    match e {
        LatticeError::TooLarge { .. } => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lattice { source, .. } => lattice_error_code(source),
            CliError::Gen(GenError::Poset(e) | GenError::Lattice(e)) => lattice_error_code(e),
            CliError::NotDecomposable(_)
            | CliError::Query(QueryError::NotDecomposable { .. })
            | CliError::Audit(AuditError::NotDecomposable(_))
            | CliError::Analysis(AnalysisError::Audit(AuditError::NotDecomposable(_))) => EXIT_PRECONDITION,
            _ => EXIT_USAGE,
        }
    }
}

/// What a successful command prints, and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

pub fn read_lattice(path: &Path) -> Result<FiniteLattice, CliError> {
    let display = path.display().to_string();
    let src = fs::read_to_string(path).map_err(|e| CliError::Read {
        path: display.clone(),
        message: e.to_string(),
    })?;
    parse_lattice(&src, LatticeFormat::detect(&src)).map_err(|source| CliError::Lattice { path: display, source })
}

fn load_manifest(path: Option<&Path>) -> Result<Manifest, CliError> {
    match path {
        None => Ok(Manifest::default_manifest()),
        Some(p) => {
            let src = fs::read_to_string(p).map_err(|e| CliError::Read {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            Ok(Manifest::parse(&src)?)
        }
    }
}

fn require_decomposable(path: &Path, lattice: &FiniteLattice) -> Result<(), CliError> {
    if is_decomposable(lattice).holds {
        Ok(())
    } else {
        Err(CliError::NotDecomposable(path.display().to_string()))
    }
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Analyze { file, output, audit } => {
            let lattice = read_lattice(&file)?;
            let theorems = audit.as_deref().map(TheoremId::parse_list).transpose()?;
            if theorems.is_some() {
                require_decomposable(&file, &lattice)?;
            }
            let doc = analyze(&lattice, theorems.as_deref())?;
            Ok(Outcome::ok(output.render(&doc)))
        }
        Command::Audit {
            file,
            theorems,
            output,
            manifest,
        } => {
            let lattice = read_lattice(&file)?;
            let ids = TheoremId::parse_list(&theorems)?;
            let manifest = load_manifest(manifest.as_deref())?;
            require_decomposable(&file, &lattice)?;
            let reports = audit_many(&lattice, &ids)?;
            Ok(audit_outcome(output.render(&reports), &reports, &manifest))
        }
        Command::Gen { spec, json, posets } => {
            if let Some(n) = posets {
                let list: Vec<String> = enumerate_posets(n)?.iter().map(|p| p.emit()).collect();
                return Ok(Outcome::ok(list.join("\n")));
            }
            let spec = spec.expect("clap requires a spec without --posets");
            let lattice = gen_named(&spec)?;
            let format = if json { LatticeFormat::Json } else { LatticeFormat::Lat };
            Ok(Outcome::ok(emit_lattice(&lattice, format)))
        }
        Command::Sweep {
            max_poset,
            theorems,
            out,
            json,
            manifest,
        } => {
            let ids = TheoremId::parse_list(&theorems)?;
            let manifest = load_manifest(manifest.as_deref())?;
            let doc = sweep(max_poset, &ids, &manifest)?;
            let report_json = render::to_json(&doc);
            if let Some(path) = out {
                fs::write(&path, &report_json).with_context(|| format!("writing {}", path.display()))?;
            }
            let stdout = if json { report_json } else { sweep_table(&doc) };
            let (stderr, code) = if doc.manifest_check.is_clean() {
                (String::new(), EXIT_OK)
            } else {
                (manifest_diagnostics(&doc.manifest_check), EXIT_UNEXPECTED)
            };
            Ok(Outcome { stdout, stderr, code })
        }
        Command::Eval { file, expr } => {
            let lattice = read_lattice(&file)?;
            let mut out = query::eval(&lattice, &expr)?;
            out.push('\n');
            Ok(Outcome::ok(out))
        }
    }
}

fn audit_outcome(stdout: String, reports: &[AuditReport], manifest: &Manifest) -> Outcome {
    let unexpected: Vec<String> = reports
        .iter()
        .filter(|r| r.verdict == Verdict::Fails && !manifest.allows(r.theorem))
        .map(|r| r.theorem.to_string())
        .collect();
    if unexpected.is_empty() {
        Outcome::ok(stdout)
    } else {
        Outcome {
            stdout,
            stderr: format!("unexpected failures: {}\n", unexpected.join(", ")),
            code: EXIT_UNEXPECTED,
        }
    }
}

/// Result of `sweep`, as written by `--out` and `--json`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub max_poset: usize,
    pub theorems: Vec<TheoremId>,
    pub report: CorpusReport,
    pub manifest_check: ManifestCheck,
}

pub fn sweep(max_poset: usize, theorems: &[TheoremId], manifest: &Manifest) -> Result<SweepDocument, CliError> {
    let entries = corpus(max_poset)?;
    let swept: BTreeSet<String> = entries
        .iter()
        .map(|e| e.canonical.iter().map(|b| format!("{b:02x}")).collect())
        .collect();
    let lattices: Vec<FiniteLattice> = entries.into_iter().map(|e| e.lattice).collect();
    let report = latkit_core::audit_corpus(&lattices, theorems)?;
    let manifest_check = manifest.check(&report, &swept)?;
    Ok(SweepDocument {
        max_poset,
        theorems: theorems.to_vec(),
        report,
        manifest_check,
    })
}

fn manifest_diagnostics(check: &ManifestCheck) -> String {
    let mut s = String::new();
    for u in &check.unexpected {
        let _ = writeln!(s, "unexpected failure: {u}");
    }
    for m in &check.missing {
        let _ = writeln!(s, "expected failure did not occur: {m}");
    }
    s
}

/// Human-readable sweep summary.
pub fn sweep_table(doc: &SweepDocument) -> String {
    let r = &doc.report;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "corpus up to {} poset elements: {} lattices, {} audited, {} not decomposable",
        doc.max_poset, r.lattices, r.audited, r.skipped
    );
    let _ = writeln!(s, "{:<8}{:>7}{:>7}{:>9}{:>12}", "theorem", "holds", "fails", "vacuous", "degenerate");
    for (t, tally) in &r.tallies {
        let _ = writeln!(
            s,
            "{:<8}{:>7}{:>7}{:>9}{:>12}",
            t.code(),
            tally.holds,
            tally.fails,
            tally.vacuous,
            tally.degenerate
        );
    }
    if !r.failures.is_empty() {
        let _ = writeln!(s, "failures:");
        for f in &r.failures {
            let witness = f
                .witness
                .as_ref()
                .map(|w| format!(" {} {:?}", w.label, w.sets))
                .unwrap_or_default();
            let _ = writeln!(s, "  {} fails on {} [{}]{}", f.theorem, f.lattice, f.canonical, witness);
        }
    }
    let status = if doc.manifest_check.is_clean() {
        "matches expected failures"
    } else {
        "DIFFERS from expected failures"
    };
    let _ = writeln!(s, "manifest: {status}");
    s
}
