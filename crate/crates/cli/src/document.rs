//! The analysis document printed by `analyze`.
//!
//! Everything is expressed in element labels, in the lattice's element order,
//! so a document reads back without the lattice it was computed from.

use serde::{Deserialize, Serialize};

use latkit_core::audit::{audit_many, AuditError, AuditReport, TheoremId};
use latkit_core::canonical_hex;
use latkit_core::classes::{classify, ClassError, ClassReport, ClassVerdict, ClassWitness};
use latkit_core::decompose::{is_decomposable, is_distributive, DecomposabilityFailure};
use latkit_core::ideals::{enumerate_ideals, minimal_of, primes_in, value_spectrum_in, IdealError, IdealSet};
use latkit_core::polars::{enumerate_polars, enumerate_ultrafilters, PolarError};
use latkit_core::{ElemSet, FiniteLattice, LatticeJson};

pub type Labels = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisDocument {
    pub lattice: LatticeJson,
    /// Hex canonical form; equal for isomorphic lattices.
    pub canonical: String,
    pub distributive: DistributivityDoc,
    pub decomposable: DecomposabilityDoc,
    pub ideals: IdealCensus,
    pub spectrum: SpectrumDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<ValuesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polars: Option<PolarsDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<ClassesDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub audits: Option<Vec<AuditReport>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributivityDoc {
    pub holds: bool,
    /// `[x, y, z]` with `x ∧ (y ∨ z) ≠ (x ∧ y) ∨ (x ∧ z)`.
    pub counterexample: Option<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitDoc {
    pub a: String,
    pub b: String,
    pub abar: String,
    pub bbar: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecomposabilityFailureDoc {
    NotDistributive { triple: [String; 3] },
    NoWitness { a: String, b: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposabilityDoc {
    pub holds: bool,
    pub witnesses: Vec<SplitDoc>,
    pub failure: Option<DecomposabilityFailureDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCensus {
    pub count: usize,
    pub members: Vec<Labels>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub primes: Vec<Labels>,
    pub minimal_primes: Vec<Labels>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementValuesDoc {
    pub element: String,
    pub count: usize,
    pub values: Vec<Labels>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarDoc {
    pub ideal: Labels,
    pub star: Labels,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuesDoc {
    pub per_element: Vec<ElementValuesDoc>,
    pub all_values: Vec<Labels>,
    pub specials: Labels,
    pub special_values: Vec<Labels>,
    pub essential_values: Vec<Labels>,
    pub radical: Labels,
    /// The radical is the meet of an empty family (the whole lattice).
    pub radical_empty_family: bool,
    pub m_star: Vec<StarDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UltrafilterDoc {
    pub members: Labels,
    pub principal: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarsDoc {
    pub count: usize,
    pub polars: Vec<Labels>,
    pub minimal: Vec<Labels>,
    pub maximal: Vec<Labels>,
    pub atoms: Labels,
    pub basic_elements: Labels,
    pub basis: Option<Labels>,
    pub discrete: bool,
    pub ultrafilters: Vec<UltrafilterDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessDoc {
    NonMinimalPrime { prime: Labels },
    MostMinimalPrimes { prime: Labels, count: usize },
    LongestDescendingChain { length: usize },
    LargestDisjointSet { bound: String, size: usize },
    MostValues { element: String, count: usize },
    Basis { elements: Labels },
    NotProjectable { element: String },
    Inconsistent {
        lower: String,
        upper: String,
        lower_count: usize,
        upper_count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub member: bool,
    pub witness: Option<WitnessDoc>,
    pub finite_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassesDoc {
    pub trivial: bool,
    pub max_minimal_primes_under_prime: usize,
    pub minimal_prime_count: usize,
    pub a: VerdictDoc,
    pub b: VerdictDoc,
    pub b_omega: VerdictDoc,
    pub c: VerdictDoc,
    pub c_omega: VerdictDoc,
    pub d: VerdictDoc,
    pub e: VerdictDoc,
    pub f: VerdictDoc,
    pub f_v: VerdictDoc,
    pub s: VerdictDoc,
    pub s_omega: VerdictDoc,
    pub t: VerdictDoc,
    pub consistent: VerdictDoc,
}

#[derive(Debug, thiserror::Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Polar(#[from] PolarError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Audit(#[from] AuditError),
}

fn label(l: &FiniteLattice, x: usize) -> String {
    l.label(x).to_string()
}

fn labels(l: &FiniteLattice, s: ElemSet) -> Labels {
    l.set_labels(s)
}

fn family(l: &FiniteLattice, f: &[IdealSet]) -> Vec<Labels> {
    f.iter().map(|i| labels(l, i.members())).collect()
}

fn elements(l: &FiniteLattice, xs: &[usize]) -> Labels {
    xs.iter().map(|&x| label(l, x)).collect()
}

fn witness_doc(l: &FiniteLattice, w: &ClassWitness) -> WitnessDoc {
    match w {
        ClassWitness::NonMinimalPrime(p) => WitnessDoc::NonMinimalPrime { prime: labels(l, *p) },
        ClassWitness::MostMinimalPrimes { prime, count } => WitnessDoc::MostMinimalPrimes {
            prime: labels(l, *prime),
            count: *count,
        },
        ClassWitness::LongestDescendingChain(length) => WitnessDoc::LongestDescendingChain { length: *length },
        ClassWitness::LargestDisjointSet { bound, size } => WitnessDoc::LargestDisjointSet {
            bound: label(l, *bound),
            size: *size,
        },
        ClassWitness::MostValues { element, count } => WitnessDoc::MostValues {
            element: label(l, *element),
            count: *count,
        },
        ClassWitness::Basis(xs) => WitnessDoc::Basis { elements: elements(l, xs) },
        ClassWitness::NotProjectable(x) => WitnessDoc::NotProjectable { element: label(l, *x) },
        ClassWitness::Inconsistent {
            lower,
            upper,
            lower_count,
            upper_count,
        } => WitnessDoc::Inconsistent {
            lower: label(l, *lower),
            upper: label(l, *upper),
            lower_count: *lower_count,
            upper_count: *upper_count,
        },
    }
}

fn verdict_doc(l: &FiniteLattice, v: &ClassVerdict) -> VerdictDoc {
    VerdictDoc {
        member: v.member,
        witness: v.witness.as_ref().map(|w| witness_doc(l, w)),
        finite_degenerate: v.finite_degenerate,
    }
}

pub fn classes_doc(l: &FiniteLattice, r: &ClassReport) -> ClassesDoc {
    let v = |c: &ClassVerdict| verdict_doc(l, c);
    ClassesDoc {
        trivial: r.trivial,
        max_minimal_primes_under_prime: r.max_minimal_primes_under_prime,
        minimal_prime_count: r.minimal_prime_count,
        a: v(&r.a),
        b: v(&r.b),
        b_omega: v(&r.b_omega),
        c: v(&r.c),
        c_omega: v(&r.c_omega),
        d: v(&r.d),
        e: v(&r.e),
        f: v(&r.f),
        f_v: v(&r.f_v),
        s: v(&r.s),
        s_omega: v(&r.s_omega),
        t: v(&r.t),
        consistent: v(&r.consistent),
    }
}

fn triple(l: &FiniteLattice, (x, y, z): (usize, usize, usize)) -> [String; 3] {
    [label(l, x), label(l, y), label(l, z)]
}

/// Builds the document. Values, polars and classes are only computed for
/// decomposable lattices; audits only when `theorems` is given, and then
/// a non-decomposable lattice is an error.
pub fn analyze(lattice: &FiniteLattice, theorems: Option<&[TheoremId]>) -> Result<AnalysisDocument, AnalysisError> {
    let l = lattice;
    let dist = is_distributive(l);
    let dec = is_decomposable(l);
    let ideals = enumerate_ideals(l);
    let primes = primes_in(l, &ideals);
    let minimal = minimal_of(l, &primes);

    let (values, polars, classes) = if dec.holds && !l.is_trivial() {
        let spectrum = value_spectrum_in(l, &ideals)?;
        let values = ValuesDoc {
            per_element: spectrum
                .per_element
                .iter()
                .map(|e| ElementValuesDoc {
                    element: label(l, e.element),
                    count: e.values.len(),
                    values: family(l, &e.values),
                })
                .collect(),
            all_values: family(l, &spectrum.all_values),
            specials: elements(l, &spectrum.specials),
            special_values: family(l, &spectrum.special_values),
            essential_values: family(l, &spectrum.essential_values),
            radical: labels(l, spectrum.radical.members()),
            radical_empty_family: spectrum.radical_empty_family,
            m_star: spectrum
                .m_star
                .iter()
                .map(|(m, s)| StarDoc {
                    ideal: labels(l, m.members()),
                    star: labels(l, s.members()),
                })
                .collect(),
        };
        let report = enumerate_polars(l)?;
        let polars = PolarsDoc {
            count: report.polars.len(),
            polars: family(l, &report.polars),
            minimal: family(l, &report.minimal_polars),
            maximal: family(l, &report.maximal_polars),
            atoms: elements(l, &report.atoms),
            basic_elements: elements(l, &report.basic_elements),
            basis: report.basis.as_ref().map(|b| elements(l, b)),
            discrete: report.is_discrete,
            ultrafilters: enumerate_ultrafilters(l)?
                .iter()
                .map(|f| UltrafilterDoc {
                    members: labels(l, f.members),
                    principal: f.principal_generator.map(|g| label(l, g)),
                })
                .collect(),
        };
        (Some(values), Some(polars), Some(classes_doc(l, &classify(l)?)))
    } else if dec.holds {
        (None, None, Some(classes_doc(l, &classify(l)?)))
    } else {
        (None, None, None)
    };

    let audits = match theorems {
        Some(ids) => Some(audit_many(l, ids)?),
        None => None,
    };

    Ok(AnalysisDocument {
        lattice: LatticeJson::from_lattice(l),
        canonical: canonical_hex(l),
        distributive: DistributivityDoc {
            holds: dist.holds,
            counterexample: dist.counterexample.map(|t| triple(l, t)),
        },
        decomposable: DecomposabilityDoc {
            holds: dec.holds,
            witnesses: dec
                .witnesses
                .iter()
                .map(|w| SplitDoc {
                    a: label(l, w.a),
                    b: label(l, w.b),
                    abar: label(l, w.abar),
                    bbar: label(l, w.bbar),
                })
                .collect(),
            failure: dec.failure.map(|f| match f {
                DecomposabilityFailure::NotDistributive { triple: t } => {
                    DecomposabilityFailureDoc::NotDistributive { triple: triple(l, t) }
                }
                DecomposabilityFailure::NoWitness { a, b } => DecomposabilityFailureDoc::NoWitness {
                    a: label(l, a),
                    b: label(l, b),
                },
            }),
        },
        ideals: IdealCensus {
            count: ideals.len(),
            members: family(l, ideals.ideals()),
        },
        spectrum: SpectrumDoc {
            primes: family(l, &primes),
            minimal_primes: family(l, &minimal),
        },
        values,
        polars,
        classes,
        audits,
    })
}
