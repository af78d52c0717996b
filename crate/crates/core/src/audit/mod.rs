//! Theorem audits.
//!
//! Each registry entry is turned into a list of instances. An instance is a
//! vector of independently evaluated conditions together with the shape of
//! the claim relating them (equivalence, implication, identity, or an
//! equivalence under a premise). The report verdict is derived from the
//! instances only; nothing here assumes the claim is true.

mod checks;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::canonical_form;
use crate::classes::{classify, ClassError, ClassReport};
use crate::decompose::{is_decomposable, DecomposabilityFailure};
use crate::ideals::{
    enumerate_ideals, minimal_of, primes_in, value_spectrum_in, IdealError, IdealLattice, IdealSet,
    ValueReport,
};
use crate::lattice::FiniteLattice;
use crate::polars::{enumerate_polars, enumerate_ultrafilters, FilterSet, PolarError, PolarReport};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuditError {
    #[error("lattice is not decomposable: {0:?}")]
    NotDecomposable(DecomposabilityFailure),
    #[error("unknown theorem `{0}`")]
    UnknownTheorem(String),
    #[error("audit context needs at least two elements")]
    TrivialLattice,
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Polar(#[from] PolarError),
}

/// Registry of audited statements, in audit order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "L3.1")]
    PrimeAnnihilator,
    #[serde(rename = "L3.2")]
    DisjointSeparators,
    #[serde(rename = "T3.3")]
    BoundedMinimalPrimes,
    #[serde(rename = "C3.4")]
    MinimalPrimeComplement,
    #[serde(rename = "L4.1")]
    TotallyOrderedIdeal,
    #[serde(rename = "L4.2")]
    MinimalPrimeCriteria,
    #[serde(rename = "T4.3")]
    BasisCriteria,
    #[serde(rename = "C4.4")]
    PolarMinimalPrimes,
    #[serde(rename = "C4.5")]
    RadicalCriteria,
    #[serde(rename = "L4.6")]
    BasisPolarDuality,
    #[serde(rename = "T4.7")]
    FiniteBasisCriteria,
    #[serde(rename = "C4.8")]
    LargeIdealUnit,
    #[serde(rename = "T5.1")]
    CompactCriteria,
    #[serde(rename = "T5.2")]
    CountablyCompactChains,
    #[serde(rename = "L6.1")]
    EssentialSpectrum,
    #[serde(rename = "T6.2")]
    IdealChainCondition,
    #[serde(rename = "L7.1")]
    SpecialDecomposition,
    #[serde(rename = "T7.2")]
    BoundedDisjointSets,
    #[serde(rename = "T7.3")]
    FiniteValuesDisjoint,
    #[serde(rename = "T7.5")]
    ConsistencyCriteria,
}

impl TheoremId {
    pub const ALL: [TheoremId; 20] = [
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
        TheoremId::BoundedDisjointSets,
        TheoremId::FiniteValuesDisjoint,
        TheoremId::ConsistencyCriteria,
    ];

    pub fn code(self) -> &'static str {
        match self {
            TheoremId::PrimeAnnihilator => "L3.1",
            TheoremId::DisjointSeparators => "L3.2",
            TheoremId::BoundedMinimalPrimes => "T3.3",
            TheoremId::MinimalPrimeComplement => "C3.4",
            TheoremId::TotallyOrderedIdeal => "L4.1",
            TheoremId::MinimalPrimeCriteria => "L4.2",
            TheoremId::BasisCriteria => "T4.3",
            TheoremId::PolarMinimalPrimes => "C4.4",
            TheoremId::RadicalCriteria => "C4.5",
            TheoremId::BasisPolarDuality => "L4.6",
            TheoremId::FiniteBasisCriteria => "T4.7",
            TheoremId::LargeIdealUnit => "C4.8",
            TheoremId::CompactCriteria => "T5.1",
            TheoremId::CountablyCompactChains => "T5.2",
            TheoremId::EssentialSpectrum => "L6.1",
            TheoremId::IdealChainCondition => "T6.2",
            TheoremId::SpecialDecomposition => "L7.1",
            TheoremId::BoundedDisjointSets => "T7.2",
            TheoremId::FiniteValuesDisjoint => "T7.3",
            TheoremId::ConsistencyCriteria => "T7.5",
        }
    }

    /// Statements whose every condition is forced true on a finite carrier.
    pub fn finite_degenerate(self) -> bool {
        matches!(
            self,
            TheoremId::FiniteBasisCriteria
                | TheoremId::CompactCriteria
                | TheoremId::CountablyCompactChains
                | TheoremId::IdealChainCondition
        )
    }

    /// Parses a comma-separated id list, or `all`.
    pub fn parse_list(list: &str) -> Result<Vec<TheoremId>, AuditError> {
        if list.trim() == "all" {
            return Ok(TheoremId::ALL.to_vec());
        }
        let mut out = Vec::new();
        for part in list.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let id: TheoremId = part.parse()?;
            if !out.contains(&id) {
                out.push(id);
            }
        }
        if out.is_empty() {
            return Err(AuditError::UnknownTheorem(list.to_string()));
        }
        out.sort();
        Ok(out)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for TheoremId {
    type Err = AuditError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.code() == s)
            .ok_or_else(|| AuditError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Vacuous,
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Vacuous => "vacuous",
            Verdict::Degenerate => "degenerate",
        })
    }
}

/// How the conditions of an instance are claimed to relate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shape {
    /// All conditions agree.
    Equivalence,
    /// The conjunction of the first `hypotheses` conditions implies each of
    /// the rest.
    Implication { hypotheses: usize },
    /// Every condition is true.
    Identity,
    /// Condition 0 is a premise; when it holds, the rest agree.
    PremisedEquivalence,
}

impl Shape {
    fn respected(self, values: &[bool]) -> bool {
        match self {
            Shape::Equivalence => values.windows(2).all(|w| w[0] == w[1]),
            Shape::Implication { hypotheses } => {
                !values[..hypotheses].iter().all(|&v| v) || values[hypotheses..].iter().all(|&v| v)
            }
            Shape::Identity => values.iter().all(|&v| v),
            Shape::PremisedEquivalence => {
                !values[0] || values[1..].windows(2).all(|w| w[0] == w[1])
            }
        }
    }
}

/// One evaluation of a statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub label: String,
    pub values: Vec<bool>,
    /// Every quantified family of the instance was empty, or its premise
    /// was false.
    pub vacuous: bool,
    pub details: Vec<String>,
    /// Offending ideals or element sets, as label lists.
    pub sets: Vec<Vec<String>>,
    /// Offending elements.
    pub elements: Vec<String>,
}

impl Instance {
    pub(crate) fn new(label: impl Into<String>, values: Vec<bool>) -> Self {
        Instance {
            label: label.into(),
            values,
            vacuous: false,
            details: Vec::new(),
            sets: Vec::new(),
            elements: Vec::new(),
        }
    }

    pub(crate) fn vacuous(mut self, vacuous: bool) -> Self {
        self.vacuous = vacuous;
        self
    }

    pub(crate) fn detail(mut self, d: impl Into<String>) -> Self {
        self.details.push(d.into());
        self
    }

    pub(crate) fn set(mut self, lattice: &FiniteLattice, s: ElemSet) -> Self {
        self.sets.push(lattice.set_labels(s));
        self
    }

    pub(crate) fn element(mut self, lattice: &FiniteLattice, x: usize) -> Self {
        self.elements.push(lattice.label(x).to_string());
        self
    }
}

/// Counts of true and false evaluations of one condition over the
/// non-vacuous instances.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub name: String,
    pub true_count: usize,
    pub false_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub theorem: TheoremId,
    pub shape: Shape,
    pub conditions: Vec<ConditionSummary>,
    pub instances: Vec<Instance>,
    pub verdict: Verdict,
    /// First violating instance when the verdict is `fails`.
    pub witness: Option<Instance>,
    pub notes: Vec<String>,
}

/// Raw output of a theorem evaluator.
pub(crate) struct Evaluation {
    pub shape: Shape,
    pub conditions: &'static [&'static str],
    pub instances: Vec<Instance>,
    pub notes: Vec<String>,
}

fn aggregate(theorem: TheoremId, eval: Evaluation) -> AuditReport {
    let Evaluation {
        shape,
        conditions,
        instances,
        notes,
    } = eval;
    let mut summaries: Vec<ConditionSummary> = conditions
        .iter()
        .map(|name| ConditionSummary {
            name: name.to_string(),
            true_count: 0,
            false_count: 0,
        })
        .collect();
    for inst in instances.iter().filter(|i| !i.vacuous) {
        debug_assert_eq!(inst.values.len(), conditions.len(), "{theorem}");
        for (s, &v) in summaries.iter_mut().zip(&inst.values) {
            if v {
                s.true_count += 1;
            } else {
                s.false_count += 1;
            }
        }
    }
    let witness = instances
        .iter()
        .find(|i| !i.vacuous && !shape.respected(&i.values))
        .cloned();
    let verdict = if witness.is_some() {
        Verdict::Fails
    } else if instances.iter().all(|i| i.vacuous) {
        Verdict::Vacuous
    } else if theorem.finite_degenerate() {
        Verdict::Degenerate
    } else {
        Verdict::Holds
    };
    AuditReport {
        theorem,
        shape,
        conditions: summaries,
        instances,
        verdict,
        witness,
        notes,
    }
}

/// Everything the evaluators read, computed once per lattice. Fields are
/// public so a caller can perturb one derived structure and observe the
/// effect on the audits.
#[derive(Debug, Clone)]
pub struct AuditContext {
    pub lattice: FiniteLattice,
    pub ideals: IdealLattice,
    pub primes: Vec<IdealSet>,
    pub minimal_primes: Vec<IdealSet>,
    pub values: ValueReport,
    pub polars: PolarReport,
    pub classes: ClassReport,
    pub ultrafilters: Vec<FilterSet>,
}

impl AuditContext {
    pub fn new(lattice: &FiniteLattice) -> Result<Self, AuditError> {
        if let Some(failure) = is_decomposable(lattice).failure {
            return Err(AuditError::NotDecomposable(failure));
        }
        if lattice.is_trivial() {
            return Err(AuditError::TrivialLattice);
        }
        let ideals = enumerate_ideals(lattice);
        let primes = primes_in(lattice, &ideals);
        let minimal_primes = minimal_of(lattice, &primes);
        let values = value_spectrum_in(lattice, &ideals)?;
        let polars = enumerate_polars(lattice)?;
        let classes = classify(lattice)?;
        let ultrafilters = enumerate_ultrafilters(lattice)?;
        Ok(AuditContext {
            lattice: lattice.clone(),
            ideals,
            primes,
            minimal_primes,
            values,
            polars,
            classes,
            ultrafilters,
        })
    }

    pub fn audit(&self, theorem: TheoremId) -> Result<AuditReport, AuditError> {
        Ok(aggregate(theorem, checks::evaluate(self, theorem)?))
    }
}

fn trivial_report(theorem: TheoremId) -> AuditReport {
    AuditReport {
        theorem,
        shape: Shape::Identity,
        conditions: Vec::new(),
        instances: Vec::new(),
        verdict: Verdict::Vacuous,
        witness: None,
        notes: vec!["one-element lattice: every quantified family is empty".to_string()],
    }
}

pub fn audit(lattice: &FiniteLattice, theorem: TheoremId) -> Result<AuditReport, AuditError> {
    Ok(audit_many(lattice, &[theorem])?.remove(0))
}

/// Full registry in registry order.
pub fn audit_all(lattice: &FiniteLattice) -> Result<Vec<AuditReport>, AuditError> {
    audit_many(lattice, &TheoremId::ALL)
}

/// The requested theorems, in registry order.
pub fn audit_many(
    lattice: &FiniteLattice,
    theorems: &[TheoremId],
) -> Result<Vec<AuditReport>, AuditError> {
    let mut ids = theorems.to_vec();
    ids.sort();
    ids.dedup();
    if let Some(failure) = is_decomposable(lattice).failure {
        return Err(AuditError::NotDecomposable(failure));
    }
    if lattice.is_trivial() {
        return Ok(ids.into_iter().map(trivial_report).collect());
    }
    let ctx = AuditContext::new(lattice)?;
    ids.into_iter().map(|t| ctx.audit(t)).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub holds: usize,
    pub fails: usize,
    pub vacuous: usize,
    pub degenerate: usize,
}

impl Tally {
    fn add(&mut self, v: Verdict) {
        match v {
            Verdict::Holds => self.holds += 1,
            Verdict::Fails => self.fails += 1,
            Verdict::Vacuous => self.vacuous += 1,
            Verdict::Degenerate => self.degenerate += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFailure {
    /// Hex canonical form of the failing lattice.
    pub canonical: String,
    pub lattice: String,
    pub theorem: TheoremId,
    pub witness: Option<Instance>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub lattices: usize,
    pub audited: usize,
    /// Non-decomposable members, not audited.
    pub skipped: usize,
    pub tallies: BTreeMap<TheoremId, Tally>,
    /// Sorted by canonical form, then registry order.
    pub failures: Vec<CorpusFailure>,
}

enum LatticeOutcome {
    Skipped,
    Audited {
        canonical: Vec<u8>,
        name: String,
        reports: Vec<AuditReport>,
    },
}

/// Audits every decomposable lattice of `corpus` against `theorems`.
/// Per-lattice work runs in parallel; aggregation is in input order and the
/// failure list is sorted by canonical form.
pub fn audit_corpus(corpus: &[FiniteLattice], theorems: &[TheoremId]) -> Result<CorpusReport, AuditError> {
    let outcomes: Vec<LatticeOutcome> = corpus
        .par_iter()
        .map(|lattice| match audit_many(lattice, theorems) {
            Ok(reports) => Ok(LatticeOutcome::Audited {
                canonical: canonical_form(lattice),
                name: lattice.name().to_string(),
                reports,
            }),
            Err(AuditError::NotDecomposable(_)) => Ok(LatticeOutcome::Skipped),
            Err(e) => Err(e),
        })
        .collect::<Result<_, _>>()?;

    let mut report = CorpusReport {
        lattices: corpus.len(),
        ..CorpusReport::default()
    };
    let mut failures: Vec<(Vec<u8>, CorpusFailure)> = Vec::new();
    for outcome in outcomes {
        match outcome {
            LatticeOutcome::Skipped => report.skipped += 1,
            LatticeOutcome::Audited {
                canonical,
                name,
                reports,
            } => {
                report.audited += 1;
                for r in reports {
                    report.tallies.entry(r.theorem).or_default().add(r.verdict);
                    if r.verdict == Verdict::Fails {
                        failures.push((
                            canonical.clone(),
                            CorpusFailure {
                                canonical: hex(&canonical),
                                lattice: name.clone(),
                                theorem: r.theorem,
                                witness: r.witness,
                            },
                        ));
                    }
                }
            }
        }
    }
    failures.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.theorem.cmp(&b.1.theorem)));
    report.failures = failures.into_iter().map(|(_, f)| f).collect();
    Ok(report)
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_codes_round_trip() {
        for t in TheoremId::ALL {
            assert_eq!(t.code().parse::<TheoremId>().unwrap(), t);
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.code()));
        }
        assert!("T9.9".parse::<TheoremId>().is_err());
        assert_eq!(TheoremId::parse_list("all").unwrap().len(), 20);
        assert_eq!(
            TheoremId::parse_list("T7.2, L3.1").unwrap(),
            [TheoremId::PrimeAnnihilator, TheoremId::BoundedDisjointSets]
        );
    }

    #[test]
    fn shapes() {
        assert!(Shape::Equivalence.respected(&[false, false]));
        assert!(!Shape::Equivalence.respected(&[true, false]));
        assert!(Shape::Implication { hypotheses: 2 }.respected(&[true, false, false]));
        assert!(!Shape::Implication { hypotheses: 1 }.respected(&[true, true, false]));
        assert!(Shape::PremisedEquivalence.respected(&[false, true, false]));
        assert!(!Shape::PremisedEquivalence.respected(&[true, true, false]));
        assert!(!Shape::Identity.respected(&[true, false]));
    }

    #[test]
    fn empty_corpus_has_empty_tallies() {
        let r = audit_corpus(&[], &TheoremId::ALL).unwrap();
        assert_eq!(r, CorpusReport::default());
    }
}
