//! Expected-failure manifests for corpus sweeps.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use latkit_core::audit::{CorpusReport, TheoremId};
use latkit_core::{canonical_hex, gen_named, GenError};

/// The checked-in default manifest.
pub const DEFAULT_MANIFEST: &str = include_str!("../manifests/expected_failures.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub expected_failures: Vec<ExpectedFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedFailure {
    pub theorem: TheoremId,
    /// Generator specs of lattices on which the theorem must keep failing
    /// whenever they are part of the sweep.
    #[serde(default)]
    pub must_fail_on: Vec<String>,
    #[serde(default)]
    pub note: String,
}

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("malformed manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("manifest lattice `{spec}`: {source}")]
    Spec { spec: String, source: GenError },
}

/// Differences between a sweep and a manifest.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestCheck {
    /// `theorem @ lattice` failures the manifest does not allow.
    pub unexpected: Vec<String>,
    /// `theorem @ spec` pins that were swept but did not fail.
    pub missing: Vec<String>,
}

impl ManifestCheck {
    pub fn is_clean(&self) -> bool {
        self.unexpected.is_empty() && self.missing.is_empty()
    }
}

impl Manifest {
    pub fn parse(src: &str) -> Result<Self, ManifestError> {
        Ok(serde_json::from_str(src)?)
    }

    pub fn default_manifest() -> Self {
        Manifest::parse(DEFAULT_MANIFEST).expect("the bundled manifest is valid")
    }

    pub fn allows(&self, theorem: TheoremId) -> bool {
        self.expected_failures.iter().any(|e| e.theorem == theorem)
    }

    /// Compares a sweep against the manifest. `swept` holds the hex
    /// canonical forms of the corpus lattices; a pin whose lattice is not
    /// among them is not checked.
    pub fn check(&self, report: &CorpusReport, swept: &BTreeSet<String>) -> Result<ManifestCheck, ManifestError> {
        let mut out = ManifestCheck::default();
        for f in &report.failures {
            if !self.allows(f.theorem) {
                out.unexpected.push(format!("{} @ {}", f.theorem, f.lattice));
            }
        }
        for expected in &self.expected_failures {
            if !report.tallies.contains_key(&expected.theorem) {
                continue;
            }
            for spec in &expected.must_fail_on {
                let lattice = gen_named(spec).map_err(|source| ManifestError::Spec {
                    spec: spec.clone(),
                    source,
                })?;
                let canonical = canonical_hex(&lattice);
                let failed = report
                    .failures
                    .iter()
                    .any(|f| f.theorem == expected.theorem && f.canonical == canonical);
                if swept.contains(&canonical) && !failed {
                    out.missing.push(format!("{} @ {spec}", expected.theorem));
                }
            }
        }
        Ok(out)
    }
}
