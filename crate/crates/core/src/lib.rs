//! Finite distributive lattices: ideals, primes, values, polars and the
//! structural classes built on them, with definitional audits of the
//! characterization theorems.

pub mod audit;
pub mod canon;
pub mod classes;
pub mod closure;
pub mod decompose;
pub mod format;
pub mod gen;
pub mod ideals;
pub mod lattice;
pub mod polars;
pub mod set;

pub use audit::{audit, audit_all, audit_corpus, AuditContext, AuditError, AuditReport, CorpusReport, TheoremId, Verdict};
pub use canon::{canonical_form, canonical_hex, Canonical};
pub use classes::{classify, in_bn, is_consistent, ClassError, ClassId, ClassReport, ClassVerdict, ClassWitness};
pub use decompose::{is_decomposable, is_distributive, Decomposability, DecompositionWitness};
pub use gen::{corpus, downset_lattice, enumerate_posets, gen_named, GenError, PosetSpec};
pub use format::{emit_lattice, parse_lattice, LatticeFormat, LatticeJson};
pub use ideals::{IdealError, IdealLattice, IdealSet, ValueReport};
pub use lattice::{FiniteLattice, LatticeError, LatticeId};
pub use polars::{PolarError, PolarReport};
pub use set::ElemSet;
