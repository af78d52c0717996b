//! Per-statement evaluators. Each condition is computed from the raw
//! structures in the context (ideals, primes, values, polars, filters);
//! class verdicts are read from the definitional classifier only where the
//! statement names the class itself.

use super::{AuditContext, AuditError, Evaluation, Instance, Shape, TheoremId};
use crate::classes::longest_descending_chain;
use crate::ideals::{ideal_join, is_prime, IdealSet};
use crate::lattice::FiniteLattice;
use crate::polars::{double_polar_set, is_unit, polar_set};
use crate::set::ElemSet;

pub(crate) fn evaluate(ctx: &AuditContext, theorem: TheoremId) -> Result<Evaluation, AuditError> {
    match theorem {
        TheoremId::PrimeAnnihilator => prime_annihilator(ctx),
        TheoremId::DisjointSeparators => disjoint_separators(ctx),
        TheoremId::BoundedMinimalPrimes => bounded_minimal_primes(ctx),
        TheoremId::MinimalPrimeComplement => minimal_prime_complement(ctx),
        TheoremId::TotallyOrderedIdeal => totally_ordered_ideal(ctx),
        TheoremId::MinimalPrimeCriteria => minimal_prime_criteria(ctx),
        TheoremId::BasisCriteria => basis_criteria(ctx),
        TheoremId::PolarMinimalPrimes => polar_minimal_primes(ctx),
        TheoremId::RadicalCriteria => radical_criteria(ctx),
        TheoremId::BasisPolarDuality => basis_polar_duality(ctx),
        TheoremId::FiniteBasisCriteria => finite_basis_criteria(ctx),
        TheoremId::LargeIdealUnit => large_ideal_unit(ctx),
        TheoremId::CompactCriteria => compact_criteria(ctx),
        TheoremId::CountablyCompactChains => countably_compact_chains(ctx),
        TheoremId::EssentialSpectrum => essential_spectrum(ctx),
        TheoremId::IdealChainCondition => ideal_chain_condition(ctx),
        TheoremId::SpecialDecomposition => special_decomposition(ctx),
        TheoremId::BoundedDisjointSets => bounded_disjoint_sets(ctx),
        TheoremId::FiniteValuesDisjoint => finite_values_disjoint(ctx),
        TheoremId::ConsistencyCriteria => consistency_criteria(ctx),
    }
}

fn eval(shape: Shape, conditions: &'static [&'static str], instances: Vec<Instance>) -> Evaluation {
    Evaluation {
        shape,
        conditions,
        instances,
        notes: Vec::new(),
    }
}

fn zero_set(l: &FiniteLattice) -> ElemSet {
    ElemSet::singleton(l.bottom())
}

fn polar(l: &FiniteLattice, x: usize) -> ElemSet {
    polar_set(l, ElemSet::singleton(x))
}

/// Join in `Ide(L)` of a family of ideals, folded with `ideal_join`; the
/// empty join is `{0}`.
fn join_ideals(l: &FiniteLattice, family: &[ElemSet]) -> Result<ElemSet, AuditError> {
    let mut acc = IdealSet::new(l, zero_set(l))?;
    for &s in family {
        acc = ideal_join(l, acc, IdealSet::new(l, s)?)?;
    }
    Ok(acc.members())
}

/// Intersection of a family of sets; the empty intersection is `L`.
fn meet_family(l: &FiniteLattice, family: impl IntoIterator<Item = ElemSet>) -> ElemSet {
    family.into_iter().fold(l.all(), |acc, s| acc & s)
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`.
fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn go(n: usize, k: usize, start: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if buf.len() == k {
            return f(buf);
        }
        for i in start..n {
            if n - i < k - buf.len() {
                break;
            }
            buf.push(i);
            let go_on = go(n, k, i + 1, buf, f);
            buf.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    go(n, k, 0, &mut Vec::with_capacity(k), f);
}

fn pairwise_incomparable(family: &[ElemSet], picks: &[usize]) -> bool {
    picks.iter().all(|&i| {
        picks
            .iter()
            .all(|&j| i == j || !(family[i].is_subset(family[j]) || family[j].is_subset(family[i])))
    })
}

/// Sets of `k` pairwise-disjoint nonzero elements, each as an ascending
/// index list; stops when `f` returns `false`.
fn for_each_disjoint_family(l: &FiniteLattice, k: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn go(
        l: &FiniteLattice,
        cands: &[usize],
        k: usize,
        start: usize,
        buf: &mut Vec<usize>,
        f: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if buf.len() == k {
            return f(buf);
        }
        for (i, &c) in cands.iter().enumerate().skip(start) {
            if buf.iter().all(|&b| l.meet(b, c) == l.bottom()) {
                buf.push(c);
                let go_on = go(l, cands, k, i + 1, buf, f);
                buf.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }
    let cands = l.nonzero().to_vec();
    go(l, &cands, k, 0, &mut Vec::with_capacity(k), f);
}

fn members(family: &[IdealSet]) -> Vec<ElemSet> {
    family.iter().map(|i| i.members()).collect()
}

fn chain_ideals(ctx: &AuditContext) -> Vec<ElemSet> {
    ctx.ideals
        .iter()
        .map(|i| i.members())
        .filter(|&s| s != zero_set(&ctx.lattice) && ctx.lattice.is_chain(s))
        .collect()
}

fn prime_annihilator(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let minimal = members(&ctx.minimal_primes);
    let instances = ctx
        .primes
        .iter()
        .map(|p| {
            let p = p.members();
            let lhs = (l.all() - p)
                .iter()
                .fold(ElemSet::EMPTY, |acc, a| acc | polar(l, a));
            let rhs = meet_family(l, minimal.iter().copied().filter(|m| m.is_subset(p)));
            Instance::new(format!("P = {}", l.format_set(p)), vec![lhs == rhs])
                .detail(format!("union of polars = {}", l.format_set(lhs)))
                .detail(format!("meet of minimal primes below = {}", l.format_set(rhs)))
                .set(l, p)
        })
        .collect();
    Ok(eval(
        Shape::Identity,
        &["union of a⊥ over a ∉ P equals the meet of the minimal primes inside P"],
        instances,
    ))
}

fn disjoint_separators(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let primes = members(&ctx.primes);
    let mut instances = Vec::new();
    let mut non_strict = Vec::new();
    for k in 1..=primes.len() {
        for_each_subset(primes.len(), k, &mut |picks| {
            if !pairwise_incomparable(&primes, picks) {
                return true;
            }
            let q: Vec<ElemSet> = picks.iter().map(|&i| primes[i]).collect();
            let union = q.iter().fold(ElemSet::EMPTY, |acc, &s| acc | s);
            for a in (l.all() - union).iter() {
                let targets: Vec<ElemSet> = (0..k)
                    .map(|i| {
                        let others = meet_family(l, (0..k).filter(|&j| j != i).map(|j| q[j]));
                        (others - q[i]) & l.down(a) & l.nonzero()
                    })
                    .collect();
                let found = find_separators(l, &targets);
                let label = format!(
                    "Q = [{}], a = {}",
                    q.iter().map(|&s| l.format_set(s)).collect::<Vec<_>>().join(", "),
                    l.label(a)
                );
                let mut inst = Instance::new(label, vec![found.is_some()]).element(l, a);
                for &s in &q {
                    inst = inst.set(l, s);
                }
                if let Some(sol) = &found {
                    let names: Vec<&str> = sol.iter().map(|&x| l.label(x)).collect();
                    inst = inst.detail(format!("separators {}", names.join(", ")));
                    if k == 1 && sol[0] == a {
                        let strict = (targets[0].without(a)).min();
                        if strict.is_none() {
                            non_strict.push(format!(
                                "Q = {}, a = {}: only a itself separates",
                                l.format_set(q[0]),
                                l.label(a)
                            ));
                        }
                    }
                }
                instances.push(inst);
            }
            true
        });
    }
    let mut e = eval(
        Shape::Identity,
        &["pairwise-disjoint separators 0 < aᵢ ≤ a exist"],
        instances,
    );
    if !non_strict.is_empty() {
        e.notes.push(format!(
            "single-prime configurations without a strict separator aᵢ < a: {}",
            non_strict.len()
        ));
        e.notes.extend(non_strict);
    }
    Ok(e)
}

/// Backtracking choice of one element per target set, pairwise disjoint.
/// Single-prime configurations prefer `a` itself, then smaller indices.
fn find_separators(l: &FiniteLattice, targets: &[ElemSet]) -> Option<Vec<usize>> {
    fn go(l: &FiniteLattice, targets: &[ElemSet], chosen: &mut Vec<usize>) -> bool {
        let i = chosen.len();
        if i == targets.len() {
            return true;
        }
        for x in targets[i].iter() {
            if chosen.iter().all(|&c| l.meet(c, x) == l.bottom()) {
                chosen.push(x);
                if go(l, targets, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(l, targets, &mut chosen).then_some(chosen)
}

fn bounded_minimal_primes(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let minimal = members(&ctx.minimal_primes);
    let values = members(&ctx.values.all_values);
    let primes = members(&ctx.primes);
    let top = l.all();
    let max_n = ctx.minimal_primes.len().max(3);
    let mut instances = Vec::new();
    for n in 1..=max_n {
        let c1 = ctx.classes.in_bn(n)?;
        let mut failures = Vec::new();
        let mut nonempty = false;

        let mut family_check = |name: &str, family: &[ElemSet], need_incomparable: bool| -> Result<bool, AuditError> {
            let mut ok = true;
            let mut err = None;
            for_each_subset(family.len(), n + 1, &mut |picks| {
                if need_incomparable && !pairwise_incomparable(family, picks) {
                    return true;
                }
                nonempty = true;
                let chosen: Vec<ElemSet> = picks.iter().map(|&i| family[i]).collect();
                match join_ideals(l, &chosen) {
                    Ok(j) if j == top => true,
                    Ok(_) => {
                        ok = false;
                        failures.push(format!(
                            "{name}: join of [{}] is not L",
                            chosen.iter().map(|&s| l.format_set(s)).collect::<Vec<_>>().join(", ")
                        ));
                        false
                    }
                    Err(e) => {
                        err = Some(e);
                        false
                    }
                }
            });
            match err {
                Some(e) => Err(e),
                None => Ok(ok),
            }
        };
        let c2 = family_check("minimal primes", &minimal, false)?;
        let c3 = family_check("values", &values, true)?;
        let c4 = family_check("primes", &primes, true)?;

        let mut c5 = true;
        let mut err = None;
        for_each_disjoint_family(l, n + 1, &mut |elems| {
            nonempty = true;
            let polars: Vec<ElemSet> = elems.iter().map(|&a| polar(l, a)).collect();
            match join_ideals(l, &polars) {
                Ok(j) if j == top => true,
                Ok(j) => {
                    c5 = false;
                    let names: Vec<&str> = elems.iter().map(|&a| l.label(a)).collect();
                    failures.push(format!(
                        "disjoint elements {}: join of polars = {}",
                        names.join(", "),
                        l.format_set(j)
                    ));
                    false
                }
                Err(e) => {
                    err = Some(e);
                    false
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        let mut inst = Instance::new(format!("n = {n}"), vec![c1, c2, c3, c4, c5]).vacuous(!nonempty);
        for f in failures {
            inst = inst.detail(f);
        }
        instances.push(inst);
    }
    Ok(eval(
        Shape::Equivalence,
        &[
            "L ∈ B_n",
            "any n+1 distinct minimal primes join to L",
            "any n+1 incomparable values join to L",
            "any n+1 incomparable primes join to L",
            "polars of any n+1 disjoint elements join to L",
        ],
        instances,
    ))
}

fn minimal_prime_complement(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let mut premise = true;
    let mut inst_details = Vec::new();
    for m in &ctx.minimal_primes {
        let perp = polar_set(l, m.members());
        let j = join_ideals(l, &[m.members(), perp])?;
        if j != l.all() {
            premise = false;
            inst_details.push(format!("M = {}: M ∨ M⊥ = {}", l.format_set(m.members()), l.format_set(j)));
        }
    }
    let mut inst = Instance::new("L", vec![premise, ctx.classes.b.member]);
    for d in inst_details {
        inst = inst.detail(d);
    }
    Ok(eval(
        Shape::Implication { hypotheses: 1 },
        &["M ∨ M⊥ = L for every minimal prime M", "L ∈ B"],
        vec![inst],
    ))
}

fn totally_ordered_ideal(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let minimal = members(&ctx.minimal_primes);
    let chains = chain_ideals(ctx);
    let min_polars = members(&ctx.polars.minimal_polars);
    let max_polars = members(&ctx.polars.maximal_polars);
    let instances = ctx
        .ideals
        .iter()
        .map(|i| i.members())
        .filter(|&i| i != zero_set(l))
        .map(|i| {
            let perp = polar_set(l, i);
            let pp = polar_set(l, perp);
            let nonzero = i & l.nonzero();
            let c1 = l.is_chain(i);
            let c2 = nonzero.iter().all(|a| polar(l, a) == perp);
            let c3 = is_prime(l, perp);
            let c4 = minimal.contains(&perp);
            let c5 = chains.contains(&pp) && !chains.iter().any(|c| pp.is_proper_subset(*c));
            let c6 = min_polars.contains(&pp);
            let c7 = max_polars.contains(&perp);
            let c8 = nonzero.iter().all(|a| ctx.values.is_special(a));
            Instance::new(format!("I = {}", l.format_set(i)), vec![c1, c2, c3, c4, c5, c6, c7, c8])
                .detail(format!("I⊥ = {}, I⊥⊥ = {}", l.format_set(perp), l.format_set(pp)))
                .set(l, i)
        })
        .collect();
    Ok(eval(
        Shape::Equivalence,
        &[
            "I is totally ordered",
            "a⊥ = I⊥ for every 0 < a ∈ I",
            "I⊥ is prime",
            "I⊥ is a minimal prime",
            "I⊥⊥ is maximal among totally ordered ideals",
            "I⊥⊥ is a minimal polar",
            "I⊥ is a maximal polar",
            "every 0 < a ∈ I is special",
        ],
        instances,
    ))
}

fn minimal_prime_criteria(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let minimal = members(&ctx.minimal_primes);
    let instances = ctx
        .primes
        .iter()
        .map(|p| {
            let p = p.members();
            let c1 = minimal.contains(&p);
            let union = (l.all() - p)
                .iter()
                .fold(ElemSet::EMPTY, |acc, a| acc | polar(l, a));
            let c2 = union == p;
            let c3 = p.iter().all(|x| !polar(l, x).is_subset(p));
            Instance::new(format!("P = {}", l.format_set(p)), vec![c1, c2, c3]).set(l, p)
        })
        .collect();
    Ok(eval(
        Shape::Equivalence,
        &[
            "P is a minimal prime",
            "P is the union of a⊥ over a ∉ P",
            "x⊥ ⊄ P for every x ∈ P",
        ],
        instances,
    ))
}

fn basis_criteria(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let zero = zero_set(l);
    let polars = members(&ctx.polars.polars);
    let min_polars = members(&ctx.polars.minimal_polars);
    let max_polars = members(&ctx.polars.maximal_polars);
    let basic: ElemSet = l.nonzero().iter().filter(|&a| l.is_chain(l.down(a))).collect();

    let c1 = ctx.classes.s.member;
    let c2 = l.nonzero().iter().all(|x| !(l.down(x) & basic).is_empty());
    let c3 = polars
        .iter()
        .filter(|&&a| a != zero && a != l.all())
        .all(|&a| min_polars.iter().any(|b| b.is_subset(a)));
    let c4 = polars.iter().filter(|&&a| a != l.all()).all(|&a| {
        meet_family(l, max_polars.iter().copied().filter(|p| a.is_subset(*p))) == a
    });
    let c5 = meet_family(l, max_polars.iter().copied()) == zero;
    Ok(eval(
        Shape::Equivalence,
        &[
            "L ∈ S",
            "every 0 < x exceeds a basic element",
            "P(L) is atomic",
            "every proper polar is the meet of the maximal polars above it",
            "the maximal polars meet to 0",
        ],
        vec![Instance::new("L", vec![c1, c2, c3, c4, c5])],
    ))
}

fn polar_minimal_primes(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let non_polar: Vec<ElemSet> = members(&ctx.minimal_primes)
        .into_iter()
        .filter(|&m| double_polar_set(l, m) != m)
        .collect();
    let mut inst = Instance::new("L", vec![non_polar.is_empty(), ctx.classes.s.member]);
    for m in non_polar {
        inst = inst.detail(format!("minimal prime {} is not a polar", l.format_set(m))).set(l, m);
    }
    Ok(eval(
        Shape::Implication { hypotheses: 1 },
        &["every minimal prime is a polar", "L ∈ S"],
        vec![inst],
    ))
}

fn radical_criteria(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let zero = zero_set(l);
    let premise = ctx.classes.b_omega.member;
    let special_meet = meet_family(l, ctx.values.special_values.iter().map(|v| v.members()));
    let essential_meet = meet_family(l, ctx.values.essential_values.iter().map(|v| v.members()));
    let inst = Instance::new(
        "L",
        vec![premise, ctx.classes.s.member, special_meet == zero, essential_meet == zero],
    )
    .vacuous(!premise)
    .detail(format!("⋂S(L) = {}", l.format_set(special_meet)))
    .detail(format!("Rad(L) = {}", l.format_set(essential_meet)));
    Ok(eval(
        Shape::PremisedEquivalence,
        &["L ∈ B_ω", "L ∈ S", "⋂S(L) = 0", "Rad(L) = 0"],
        vec![inst],
    ))
}

fn basis_polar_duality(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let Some(basis) = &ctx.polars.basis else {
        return Ok(eval(
            Shape::Identity,
            &["(⋁_Δ Aᵢ)⊥ = (⋁_{N∖Δ} Aᵢ)⊥⊥"],
            Vec::new(),
        ));
    };
    let a: Vec<ElemSet> = basis
        .iter()
        .map(|&x| double_polar_set(l, ElemSet::singleton(x)))
        .collect();
    let n = a.len();
    let mut instances = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let inside: Vec<ElemSet> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
        let outside: Vec<ElemSet> = (0..n).filter(|i| mask >> i & 1 == 0).map(|i| a[i]).collect();
        let lhs = polar_set(l, join_ideals(l, &inside)?);
        let rhs = double_polar_set(l, join_ideals(l, &outside)?);
        let names: Vec<&str> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| l.label(basis[i])).collect();
        instances.push(
            Instance::new(format!("Δ = {{{}}}", names.join(", ")), vec![lhs == rhs])
                .detail(format!("lhs = {}, rhs = {}", l.format_set(lhs), l.format_set(rhs))),
        );
    }
    Ok(eval(
        Shape::Identity,
        &["(⋁_Δ Aᵢ)⊥ = (⋁_{N∖Δ} Aᵢ)⊥⊥"],
        instances,
    ))
}

/// Whether strict inclusion on `family` admits no infinite descending
/// chain: on a finite family this is acyclicity, checked by peeling off
/// minimal members.
fn satisfies_dcc(family: &[ElemSet]) -> bool {
    let mut rest: Vec<ElemSet> = family.to_vec();
    rest.sort();
    rest.dedup();
    while !rest.is_empty() {
        let before = rest.len();
        let snapshot = rest.clone();
        rest.retain(|s| snapshot.iter().any(|t| t.is_proper_subset(*s)));
        if rest.len() == before {
            return false;
        }
    }
    true
}

fn finite_basis_criteria(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let polars = members(&ctx.polars.polars);
    let finite = polars.len() <= 1usize << l.n().min(63);
    let dcc = satisfies_dcc(&polars);
    Ok(eval(
        Shape::Equivalence,
        &["L ∈ S_ω", "P(L) is finite", "P(L) satisfies DCC"],
        vec![Instance::new("L", vec![ctx.classes.s_omega.member, finite, dcc])
            .detail(format!("|P(L)| = {}", polars.len()))
            .detail(format!("longest descending chain in P(L): {}", longest_descending_chain(&polars)))],
    ))
}

fn large_ideal_unit(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let premise = ctx.classes.b_omega.member;
    let basic: Vec<usize> = l.nonzero().iter().filter(|&a| l.is_chain(l.down(a))).collect();
    // Largeness is upward closed, so some finite join of totally ordered
    // principal ideals is large iff the join of all of them is.
    let principal: Vec<ElemSet> = basic.iter().map(|&a| l.down(a)).collect();
    let join = join_ideals(l, &principal)?;
    let zero = zero_set(l);
    let large = !basic.is_empty()
        && ctx
            .ideals
            .iter()
            .map(|j| j.members())
            .filter(|&j| j != zero)
            .all(|j| (j & join) != zero);
    let mut unit = None;
    for u in l.nonzero().iter() {
        if is_unit(l, u)? {
            unit = Some(u);
            break;
        }
    }
    let has_unit = unit.is_some();
    let mut inst = Instance::new("L", vec![premise, ctx.classes.s_omega.member, large, has_unit])
        .vacuous(!premise)
        .detail(format!("join of totally ordered principal ideals = {}", l.format_set(join)));
    if let Some(u) = unit {
        inst = inst.detail(format!("unit {} with {} values", l.label(u), ctx.values.count(u)));
    }
    Ok(eval(
        Shape::PremisedEquivalence,
        &[
            "L ∈ B_ω",
            "L ∈ S_ω",
            "some finite join of totally ordered principal ideals is large",
            "L has a unit with finitely many values",
        ],
        vec![inst],
    ))
}

fn compact_criteria(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let atoms = l.atoms();
    let discrete = l.nonzero().iter().all(|x| !(l.down(x) & atoms).is_empty());
    let minimal = members(&ctx.minimal_primes);
    let min_polar = minimal.iter().all(|&m| double_polar_set(l, m) == m);
    let atom_outside = minimal.iter().all(|&m| !(atoms - m).is_empty());
    let principal = ctx.ultrafilters.iter().all(|u| u.principal_generator.is_some());
    Ok(eval(
        Shape::Equivalence,
        &[
            "L ∈ C",
            "L is discrete and every minimal prime is a polar",
            "every minimal prime misses some atom",
            "every ultrafilter is principal",
        ],
        vec![Instance::new("L", vec![ctx.classes.c.member, discrete && min_polar, atom_outside, principal])
            .detail(format!("{} ultrafilters", ctx.ultrafilters.len()))],
    ))
}

fn countably_compact_chains(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let minimal = members(&ctx.minimal_primes);
    let premise = minimal.iter().all(|&m| double_polar_set(l, m) == m);
    // In a finite chain every subset's meet is one of its members, so a
    // family meeting to 0 already contains 0: a one-element finite subfamily.
    let chains = chain_ideals(ctx);
    let all_compact = chains.iter().all(|&c| {
        c.iter().all(|x| c.iter().all(|y| {
            let m = l.meet(x, y);
            m == x || m == y
        }))
    });
    Ok(eval(
        Shape::PremisedEquivalence,
        &[
            "every minimal prime is a polar",
            "L ∈ C_ω",
            "every totally ordered ideal is countably compact",
        ],
        vec![Instance::new("L", vec![premise, ctx.classes.c_omega.member, all_compact])
            .vacuous(!premise)
            .detail(format!("{} totally ordered ideals", chains.len()))],
    ))
}

fn essential_spectrum(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let spe = members(&ctx.primes);
    let v = members(&ctx.values.all_values);
    let mut inst = Instance::new("L", vec![ctx.classes.e.member, spe == v]);
    for s in spe.iter().filter(|s| !v.contains(s)) {
        inst = inst.detail(format!("prime {} is not a value", l.format_set(*s)));
    }
    for s in v.iter().filter(|s| !spe.contains(s)) {
        inst = inst.detail(format!("value {} is not prime", l.format_set(*s)));
    }
    Ok(eval(Shape::Equivalence, &["L ∈ E", "Spe(L) = V(L)"], vec![inst]))
}

fn ideal_chain_condition(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let v = members(&ctx.values.all_values);
    let p = members(&ctx.polars.polars);
    let c = &ctx.classes;
    Ok(eval(
        Shape::Equivalence,
        &["L ∈ D", "V(L) and P(L) satisfy DCC", "L ∈ E ∩ S_ω"],
        vec![Instance::new(
            "L",
            vec![c.d.member, satisfies_dcc(&v) && satisfies_dcc(&p), c.e.member && c.s_omega.member],
        )],
    ))
}

fn special_decomposition(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let specials: ElemSet = ctx.values.specials.iter().copied().collect();
    let mut decomposable = true;
    let mut inst_details = Vec::new();
    for a in l.nonzero().iter() {
        let cands: Vec<usize> = (specials & l.down(a)).to_vec();
        match disjoint_join(l, &cands, a) {
            Some(parts) => {
                let names: Vec<&str> = parts.iter().map(|&x| l.label(x)).collect();
                inst_details.push(format!("{} = {}", l.label(a), names.join(" ∨ ")));
            }
            None => {
                decomposable = false;
                inst_details.push(format!("{} is not a disjoint join of specials", l.label(a)));
            }
        }
    }
    let mut inst = Instance::new("L", vec![ctx.classes.f_v.member, decomposable]);
    for d in inst_details {
        inst = inst.detail(d);
    }
    Ok(eval(
        Shape::Equivalence,
        &["L ∈ F_v", "every 0 < a is a join of pairwise-disjoint specials"],
        vec![inst],
    ))
}

/// Pairwise-disjoint members of `cands` joining to `target`.
fn disjoint_join(l: &FiniteLattice, cands: &[usize], target: usize) -> Option<Vec<usize>> {
    fn go(l: &FiniteLattice, cands: &[usize], target: usize, start: usize, chosen: &mut Vec<usize>) -> bool {
        if !chosen.is_empty() && l.join_all(chosen.iter().copied().collect()) == target {
            return true;
        }
        for (i, &c) in cands.iter().enumerate().skip(start) {
            if chosen.iter().all(|&x| l.meet(x, c) == l.bottom()) {
                chosen.push(c);
                if go(l, cands, target, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(l, cands, target, 0, &mut chosen).then_some(chosen)
}

fn bounded_disjoint_sets(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let l = &ctx.lattice;
    let c = &ctx.classes;
    let v = members(&ctx.values.all_values);
    let s = members(&ctx.values.special_values);
    let mut inst = Instance::new("L", vec![c.f.member, c.a.member, v == s]);
    if let Some(crate::classes::ClassWitness::NonMinimalPrime(p)) = &c.a.witness {
        inst = inst.detail(format!("non-minimal prime {}", l.format_set(*p))).set(l, *p);
    }
    for x in v.iter().filter(|x| !s.contains(x)) {
        inst = inst.detail(format!("value {} is not special", l.format_set(*x)));
    }
    Ok(eval(
        Shape::Implication { hypotheses: 1 },
        &["L ∈ F", "L ∈ A", "V(L) = S(L)"],
        vec![inst],
    ))
}

fn finite_values_disjoint(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let c = &ctx.classes;
    Ok(eval(
        Shape::Implication { hypotheses: 2 },
        &["L ∈ A", "L ∈ F_v", "L ∈ F"],
        vec![Instance::new("L", vec![c.a.member, c.f_v.member, c.f.member])],
    ))
}

fn consistency_criteria(ctx: &AuditContext) -> Result<Evaluation, AuditError> {
    let c = &ctx.classes;
    let premise = c.f_v.member;
    Ok(eval(
        Shape::PremisedEquivalence,
        &["L ∈ F_v", "L ∈ T", "L ∈ B", "L is consistent"],
        vec![Instance::new("L", vec![premise, c.t.member, c.b.member, c.consistent.member]).vacuous(!premise)],
    ))
}
