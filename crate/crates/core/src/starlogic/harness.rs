//! Generic quantum-logic harnesses.
//!
//! [`functional_logic_check`] verifies that a family of [0,1]-valued
//! functions on a finite universe satisfying the closure hypotheses (zero,
//! complements, sums of pairwise-admissible subfamilies) forms a quantum
//! logic under the pointwise order, with point evaluations as an ordering
//! set.
//!
//! [`star_logic_harness`] verifies the deformed-product construction: from a
//! family of star-idempotent fuzzy events with a pluggable product rule, it
//! checks the four closure hypotheses and then the conclusions: the quantum
//! logic axioms, orthogonality iff vanishing star product, and Boolean
//! behavior (with star-commutation) on every sublattice whose meets and
//! joins are the deformed set operations.

use super::poset::{FinitePoset, PosetAxiomReport};
use super::{FuzzyEventQL, ProbeSet, FAMILY_CAP};
use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigen, max_entry_diff, trace_product, CMatrix, C64};
use crate::operators::{operator_leq, HermitianOperator, ProjectivePoint};
use crate::tol::Tolerances;
use std::sync::Arc;

/// A [0,1]-valued function tabulated on a finite universe.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub name: String,
    pub values: Vec<f64>,
}

impl SampledFunction {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

fn function_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
}

/// Report of the functional quantum-logic check.
#[derive(Debug, Clone)]
pub struct FunctionalLogicReport {
    pub universe_size: usize,
    pub family_size: usize,
    pub zero_present: bool,
    /// First function whose complement is missing, if any.
    pub complement_witness: Option<String>,
    /// First pairwise-admissible subfamily whose sum is missing, if any.
    pub sum_closure_witness: Option<String>,
    pub hypotheses_ok: bool,
    pub subfamilies_checked: usize,
    /// Conclusion checks; absent when a hypothesis failed.
    pub poset: Option<PosetAxiomReport>,
    pub ordering_ok: Option<bool>,
}

impl FunctionalLogicReport {
    pub fn passed(&self) -> bool {
        self.hypotheses_ok
            && self
                .poset
                .as_ref()
                .is_some_and(|p| p.quantum_logic_ok())
            && self.ordering_ok == Some(true)
    }
}

/// Check the functional quantum-logic construction on a tabulated family.
///
/// Hypotheses: the zero function belongs to the family, complements stay in
/// the family, and every subfamily (size <= `max_subfamily`) with pairwise
/// sums below 1 has its sum in the family. A hypothesis failure aborts the
/// conclusion checks and carries a witness.
pub fn functional_logic_check(
    functions: &[SampledFunction],
    max_subfamily: usize,
    tol: &Tolerances,
) -> Result<FunctionalLogicReport> {
    let family_size = functions.len();
    if family_size > FAMILY_CAP {
        return Err(Error::FamilyTooLarge {
            size: family_size,
            cap: FAMILY_CAP,
        });
    }
    let universe_size = functions.first().map_or(0, |f| f.values.len());
    assert!(universe_size <= 10_000, "universe cap exceeded");
    for f in functions {
        if f.values.len() != universe_size {
            return Err(Error::DimensionMismatch {
                left: f.values.len(),
                right: universe_size,
            });
        }
    }

    let find = |values: &[f64]| -> Option<usize> {
        functions
            .iter()
            .position(|g| function_distance(&g.values, values) < tol.probe)
    };

    let zero_values = vec![0.0; universe_size];
    let zero_idx = find(&zero_values);
    let zero_present = zero_idx.is_some();

    let mut complement_witness = None;
    let mut complements = vec![usize::MAX; family_size];
    for (i, f) in functions.iter().enumerate() {
        let complement: Vec<f64> = f.values.iter().map(|v| 1.0 - v).collect();
        match find(&complement) {
            Some(j) => complements[i] = j,
            None => {
                if complement_witness.is_none() {
                    complement_witness = Some(format!("1 - {} is not in the family", f.name));
                }
            }
        }
    }

    // Sum closure over admissible subfamilies, enumerated by backtracking on
    // the pairwise condition f_i + f_j <= 1.
    let mut sum_closure_witness = None;
    let mut subfamilies_checked = 0usize;
    let admissible = |i: usize, j: usize| {
        functions[i]
            .values
            .iter()
            .zip(&functions[j].values)
            .all(|(a, b)| a + b <= 1.0 + tol.probe)
    };
    let mut stack: Vec<(Vec<usize>, Vec<f64>)> = functions
        .iter()
        .enumerate()
        .map(|(i, f)| (vec![i], f.values.clone()))
        .collect();
    while let Some((members, sum)) = stack.pop() {
        if members.len() >= 2 {
            subfamilies_checked += 1;
            if find(&sum).is_none() && sum_closure_witness.is_none() {
                let names: Vec<&str> =
                    members.iter().map(|&k| functions[k].name.as_str()).collect();
                sum_closure_witness =
                    Some(format!("sum of {{{}}} is not in the family", names.join(", ")));
            }
        }
        if members.len() == max_subfamily {
            continue;
        }
        let last = *members.last().expect("nonempty");
        for (k, candidate) in functions.iter().enumerate().skip(last + 1) {
            if members.iter().all(|&m| admissible(m, k)) {
                let mut next_members = members.clone();
                next_members.push(k);
                let next_sum: Vec<f64> = sum
                    .iter()
                    .zip(&candidate.values)
                    .map(|(a, b)| a + b)
                    .collect();
                stack.push((next_members, next_sum));
            }
        }
    }

    let hypotheses_ok =
        zero_present && complement_witness.is_none() && sum_closure_witness.is_none();
    if !hypotheses_ok {
        return Ok(FunctionalLogicReport {
            universe_size,
            family_size,
            zero_present,
            complement_witness,
            sum_closure_witness,
            hypotheses_ok,
            subfamilies_checked,
            poset: None,
            ordering_ok: None,
        });
    }

    // Conclusions: poset axioms under the pointwise order, and the point
    // evaluations as an ordering set.
    let leq: Vec<Vec<bool>> = functions
        .iter()
        .map(|f| {
            functions
                .iter()
                .map(|g| {
                    f.values
                        .iter()
                        .zip(&g.values)
                        .all(|(a, b)| *a <= *b + tol.probe)
                })
                .collect()
        })
        .collect();
    let one_values = vec![1.0; universe_size];
    let one_idx = find(&one_values).expect("complement of zero is present");
    let poset = FinitePoset {
        labels: functions.iter().map(|f| f.name.clone()).collect(),
        leq: leq.clone(),
        complement: complements,
        zero: zero_idx.expect("checked above"),
        one: one_idx,
    };
    let poset_report = poset.check(max_subfamily.max(2));

    let mut ordering_ok = true;
    for i in 0..family_size {
        for j in 0..family_size {
            if i == j || leq[i][j] {
                continue;
            }
            // Point evaluations must separate the non-ordered pair.
            let separated = functions[i]
                .values
                .iter()
                .zip(&functions[j].values)
                .any(|(a, b)| *a > *b + tol.probe);
            if !separated {
                ordering_ok = false;
            }
        }
    }

    Ok(FunctionalLogicReport {
        universe_size,
        family_size,
        zero_present,
        complement_witness,
        sum_closure_witness,
        hypotheses_ok,
        subfamilies_checked,
        poset: Some(poset_report),
        ordering_ok: Some(ordering_ok),
    })
}

type CustomStar =
    Arc<dyn Fn(&FuzzyEventQL, &FuzzyEventQL, &ProjectivePoint) -> C64 + Send + Sync>;

/// Product rule over membership functions for the deformed set operations.
#[derive(Clone)]
pub enum StarRule {
    /// tr(T_A T_B p): the non-commutative product of the projective logic.
    Operator,
    /// mu_A(p) mu_B(p): the undeformed commutative baseline.
    PointwiseProduct,
    /// Experimental rules; hypotheses are checked, never assumed.
    Custom { name: String, rule: CustomStar },
}

impl StarRule {
    pub fn name(&self) -> &str {
        match self {
            Self::Operator => "operator",
            Self::PointwiseProduct => "pointwise-product",
            Self::Custom { name, .. } => name,
        }
    }

    pub fn value(&self, a: &FuzzyEventQL, b: &FuzzyEventQL, p: &ProjectivePoint) -> C64 {
        match self {
            Self::Operator => super::star_value(a, b, p),
            Self::PointwiseProduct => C64::new(a.eval(p) * b.eval(p), 0.0),
            Self::Custom { rule, .. } => rule(a, b, p),
        }
    }
}

/// Boolean-behavior report for one detected sublattice.
#[derive(Debug, Clone)]
pub struct BooleanSublatticeReport {
    /// Indices into the harness family.
    pub member_indices: Vec<usize>,
    pub member_labels: Vec<String>,
    /// Deformed meet/join of every pair lands inside the subset.
    pub closed: bool,
    /// Deformed operations coincide with the poset meet/join in the subset.
    pub matches_poset_ops: bool,
    pub all_pairs_star_commute: bool,
    /// Commutativity, associativity, distributivity, absorption, identities
    /// and complement laws of the six-tuple presentation.
    pub boolean_ok: bool,
    pub max_deviation: f64,
}

/// Report of the deformed-product quantum-logic harness.
#[derive(Debug, Clone)]
pub struct HarnessReport {
    pub rule: String,
    pub labels: Vec<String>,
    pub dropped_non_idempotent: Vec<String>,
    pub empty_present: bool,
    pub complement_witness: Option<String>,
    /// Hypothesis iii witness: a pair breaking either direction of
    /// mu_A + mu_B <= 1 iff star(A, B) = 0.
    pub disjointness_witness: Option<String>,
    /// Hypothesis iv witness: an orthogonal subfamily whose join is missing.
    pub orthogonal_join_witness: Option<String>,
    pub hypotheses_ok: bool,
    pub poset: Option<PosetAxiomReport>,
    pub ordering_ok: Option<bool>,
    /// Conclusion 2: orthogonality in the poset iff vanishing star product.
    pub orth_iff_star_zero: Option<bool>,
    pub orth_iff_witness: Option<String>,
    /// Conclusion 3: every complement-closed subset that is a sublattice
    /// under the deformed operations.
    pub boolean_sublattices: Vec<BooleanSublatticeReport>,
}

impl HarnessReport {
    pub fn conclusions_passed(&self) -> bool {
        self.hypotheses_ok
            && self.poset.as_ref().is_some_and(|p| p.quantum_logic_ok())
            && self.ordering_ok == Some(true)
            && self.orth_iff_star_zero == Some(true)
            && self
                .boolean_sublattices
                .iter()
                .all(|b| b.boolean_ok && b.all_pairs_star_commute)
    }
}

/// Run the deformed-product harness on a family of fuzzy events.
///
/// The family is closed under complement with the bounds adjoined, then
/// filtered to the star-idempotent elements under `rule` (dropped inputs are
/// reported). Hypothesis failures abort the conclusion checks.
pub fn star_logic_harness(
    family: &[FuzzyEventQL],
    rule: &StarRule,
    probes: &ProbeSet,
    tol: &Tolerances,
) -> Result<HarnessReport> {
    let dim = family.first().map_or(2, |e| e.dim());
    for e in family {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch {
                left: dim,
                right: e.dim(),
            });
        }
    }

    // Closure under complement with bounds adjoined.
    let mut closed: Vec<FuzzyEventQL> =
        vec![FuzzyEventQL::empty(dim), FuzzyEventQL::universe(dim)];
    let push_unique = |list: &mut Vec<FuzzyEventQL>, e: FuzzyEventQL| {
        if !list
            .iter()
            .any(|f| max_entry_diff(f.generator().matrix(), e.generator().matrix()) < 1e-10)
        {
            list.push(e);
        }
    };
    for e in family {
        push_unique(&mut closed, e.clone());
        push_unique(&mut closed, e.complement());
    }
    if closed.len() > FAMILY_CAP {
        return Err(Error::FamilyTooLarge {
            size: closed.len(),
            cap: FAMILY_CAP,
        });
    }

    // Filter to star-idempotent elements under the given rule.
    let mut kept: Vec<FuzzyEventQL> = Vec::new();
    let mut dropped_non_idempotent = Vec::new();
    for (k, e) in closed.iter().enumerate() {
        let dev = probes.points().iter().fold(0.0_f64, |acc, p| {
            acc.max((rule.value(e, e, p) - C64::new(e.eval(p), 0.0)).norm())
        });
        if dev < tol.probe {
            kept.push(e.clone());
        } else {
            dropped_non_idempotent.push(format!("element {k} (idempotence defect {dev:.3e})"));
        }
    }

    let n = kept.len();
    let labels: Vec<String> = kept
        .iter()
        .enumerate()
        .map(|(k, e)| match k {
            0 => "empty".to_string(),
            1 => "universe".to_string(),
            _ => format!("E{}(trace {:.3})", k, e.generator().trace()),
        })
        .collect();

    // Tabulate memberships and star values on the probe set once.
    let np = probes.len();
    let mu: Vec<Vec<f64>> = kept
        .iter()
        .map(|e| probes.points().iter().map(|p| e.eval(p)).collect())
        .collect();
    let star_tab: Vec<Vec<Vec<C64>>> = kept
        .iter()
        .map(|a| {
            kept.iter()
                .map(|b| {
                    probes
                        .points()
                        .iter()
                        .map(|p| rule.value(a, b, p))
                        .collect()
                })
                .collect()
        })
        .collect();
    let star_max = |i: usize, j: usize| -> f64 {
        (0..np).fold(0.0_f64, |acc, k| acc.max(star_tab[i][j][k].norm()))
    };

    // Hypothesis i: the empty event is present (index 0 by construction, but
    // it must have survived the idempotence filter).
    let empty_present = n >= 2
        && kept[0].generator().trace().abs() < 1e-9
        && (kept[1].generator().trace() - dim as f64).abs() < 1e-9;

    // Hypothesis ii: complements stay in the kept family.
    let mut complement_witness = None;
    let mut complements = vec![usize::MAX; n];
    for i in 0..n {
        let comp = kept[i].complement();
        match kept.iter().position(|f| {
            max_entry_diff(f.generator().matrix(), comp.generator().matrix()) < 1e-9
        }) {
            Some(j) => complements[i] = j,
            None => {
                if complement_witness.is_none() {
                    complement_witness =
                        Some(format!("complement of {} left the family", labels[i]));
                }
            }
        }
    }

    // Hypothesis iii, both directions: mu_A + mu_B <= 1 iff star = 0.
    let mut disjointness_witness = None;
    for i in 0..n {
        for j in 0..n {
            let sum_max = (0..np).fold(0.0_f64, |acc, k| acc.max(mu[i][k] + mu[j][k]));
            let bounded = sum_max <= 1.0 + tol.probe;
            let star_zero = star_max(i, j) < tol.probe;
            if bounded != star_zero && disjointness_witness.is_none() {
                disjointness_witness = Some(format!(
                    "pair ({}, {}): max(mu+mu) = {sum_max:.6}, max|star| = {:.3e}",
                    labels[i],
                    labels[j],
                    star_max(i, j)
                ));
            }
        }
    }

    // Hypothesis iv: joins of orthogonal subfamilies stay in the family.
    // For pairwise star-zero families the deformed join membership is the
    // plain sum of memberships.
    let mut orthogonal_join_witness = None;
    let mut stack: Vec<Vec<usize>> = (2..n).map(|i| vec![i]).collect();
    while let Some(members) = stack.pop() {
        if members.len() >= 2 {
            let join_values: Vec<f64> = (0..np)
                .map(|k| members.iter().map(|&m| mu[m][k]).sum())
                .collect();
            let found = mu.iter().any(|candidate| {
                candidate
                    .iter()
                    .zip(&join_values)
                    .all(|(c, j)| (c - j).abs() < tol.probe * 10.0)
            });
            if !found && orthogonal_join_witness.is_none() {
                let names: Vec<&str> = members.iter().map(|&m| labels[m].as_str()).collect();
                orthogonal_join_witness = Some(format!(
                    "join of orthogonal family {{{}}} left the family",
                    names.join(", ")
                ));
            }
        }
        if members.len() >= 6 {
            continue;
        }
        let last = *members.last().expect("nonempty");
        for k in (last + 1)..n {
            if members
                .iter()
                .all(|&m| star_max(m, k) < tol.probe && star_max(k, m) < tol.probe)
            {
                let mut next = members.clone();
                next.push(k);
                stack.push(next);
            }
        }
    }

    let hypotheses_ok = empty_present
        && complement_witness.is_none()
        && disjointness_witness.is_none()
        && orthogonal_join_witness.is_none();

    if !hypotheses_ok {
        return Ok(HarnessReport {
            rule: rule.name().to_string(),
            labels,
            dropped_non_idempotent,
            empty_present,
            complement_witness,
            disjointness_witness,
            orthogonal_join_witness,
            hypotheses_ok,
            poset: None,
            ordering_ok: None,
            orth_iff_star_zero: None,
            orth_iff_witness: None,
            boolean_sublattices: Vec::new(),
        });
    }

    // Conclusion 1: quantum-logic axioms under the fuzzy order.
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = operator_leq(kept[i].generator(), kept[j].generator(), tol)?;
        }
    }
    let poset = FinitePoset {
        labels: labels.clone(),
        leq: leq.clone(),
        complement: complements.clone(),
        zero: 0,
        one: 1,
    };
    let poset_report = poset.check(6);

    // Point evaluations as an ordering set: probe witnesses first, the
    // bottom eigenvector of T_j - T_i as the exact separating state after.
    let mut ordering_ok = true;
    for i in 0..n {
        for j in 0..n {
            if i == j || leq[i][j] {
                continue;
            }
            let by_probe = (0..np).any(|k| mu[i][k] > mu[j][k] + tol.probe);
            let by_eigen = || {
                let diff = kept[j].generator().matrix() - kept[i].generator().matrix();
                let (_, vectors) = hermitian_eigen(&diff);
                let witness = ProjectivePoint::from_vector(&vectors[0]).expect("unit vector");
                kept[i].eval(&witness) > kept[j].eval(&witness) + tol.probe
            };
            if !by_probe && !by_eigen() {
                ordering_ok = false;
            }
        }
    }

    // Conclusion 2: orthogonality (A <= not B) iff star(A, B) = 0.
    let mut orth_iff = true;
    let mut orth_iff_witness = None;
    for i in 0..n {
        for j in 0..n {
            let orth = leq[i][complements[j]];
            let star_zero = star_max(i, j) < tol.probe;
            if orth != star_zero {
                orth_iff = false;
                if orth_iff_witness.is_none() {
                    orth_iff_witness = Some(format!(
                        "pair ({}, {}): orthogonal = {orth}, max|star| = {:.3e}",
                        labels[i],
                        labels[j],
                        star_max(i, j)
                    ));
                }
            }
        }
    }

    // Conclusion 3: complement-closed subsets that are sublattices under the
    // deformed operations.
    let boolean_sublattices = detect_boolean_sublattices(
        &kept, &labels, &mu, &star_tab, &leq, &complements, np, tol,
    );

    Ok(HarnessReport {
        rule: rule.name().to_string(),
        labels,
        dropped_non_idempotent,
        empty_present,
        complement_witness,
        disjointness_witness,
        orthogonal_join_witness,
        hypotheses_ok,
        poset: Some(poset_report),
        ordering_ok: Some(ordering_ok),
        orth_iff_star_zero: Some(orth_iff),
        orth_iff_witness,
        boolean_sublattices,
    })
}

#[allow(clippy::too_many_arguments, clippy::needless_range_loop)]
fn detect_boolean_sublattices(
    kept: &[FuzzyEventQL],
    labels: &[String],
    mu: &[Vec<f64>],
    star_tab: &[Vec<Vec<C64>>],
    leq: &[Vec<bool>],
    complements: &[usize],
    np: usize,
    tol: &Tolerances,
) -> Vec<BooleanSublatticeReport> {
    let n = kept.len();

    // Complement pairs beyond the bounds; subsets are unions of pairs.
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut seen = vec![false; n];
    seen[0] = true;
    seen[1] = true;
    for i in 2..n {
        if !seen[i] {
            let c = complements[i];
            seen[i] = true;
            seen[c] = true;
            pairs.push((i, c.min(n - 1)));
        }
    }
    if pairs.len() > 12 {
        // 2^12 candidate subsets is the practical scan budget.
        return Vec::new();
    }

    // Match a pointwise field against a subset member; returns the index
    // local to the subset.
    let match_member = |values: &dyn Fn(usize) -> C64, subset: &[usize]| -> Option<usize> {
        subset.iter().position(|&c| {
            (0..np).all(|k| (values(k) - C64::new(mu[c][k], 0.0)).norm() < tol.probe * 10.0)
        })
    };

    let mut reports = Vec::new();
    for mask in 0..(1u32 << pairs.len()) {
        let mut subset = vec![0usize, 1usize];
        for (b, &(i, c)) in pairs.iter().enumerate() {
            if mask & (1 << b) != 0 {
                subset.push(i);
                subset.push(c);
            }
        }
        let m = subset.len();

        // Deformed meet/join tables restricted to the subset.
        let mut meet_idx = vec![vec![None; m]; m];
        let mut join_idx = vec![vec![None; m]; m];
        let mut closed = true;
        let mut max_deviation = 0.0_f64;
        for (ai, &a) in subset.iter().enumerate() {
            for (bi, &b) in subset.iter().enumerate() {
                let meet_val = |k: usize| star_tab[a][b][k];
                let join_val = |k: usize| {
                    C64::new(mu[a][k] + mu[b][k], 0.0) - star_tab[a][b][k]
                };
                meet_idx[ai][bi] = match_member(&meet_val, &subset);
                join_idx[ai][bi] = match_member(&join_val, &subset);
                if meet_idx[ai][bi].is_none() || join_idx[ai][bi].is_none() {
                    closed = false;
                } else {
                    let mc = subset[meet_idx[ai][bi].expect("matched")];
                    let jc = subset[join_idx[ai][bi].expect("matched")];
                    for k in 0..np {
                        max_deviation = max_deviation
                            .max((meet_val(k) - C64::new(mu[mc][k], 0.0)).norm())
                            .max((join_val(k) - C64::new(mu[jc][k], 0.0)).norm());
                    }
                }
            }
        }
        if !closed {
            continue;
        }

        // The deformed operations must be the poset meet/join inside the
        // subset for it to count as a sublattice.
        let sub_poset = FinitePoset {
            labels: subset.iter().map(|&k| labels[k].clone()).collect(),
            leq: subset
                .iter()
                .map(|&i| subset.iter().map(|&j| leq[i][j]).collect())
                .collect(),
            complement: subset
                .iter()
                .map(|&i| {
                    subset
                        .iter()
                        .position(|&j| j == complements[i])
                        .expect("subset is complement-closed")
                })
                .collect(),
            zero: 0,
            one: 1,
        };
        let mut matches_poset_ops = true;
        for ai in 0..m {
            for bi in 0..m {
                if meet_idx[ai][bi] != sub_poset.glb(ai, bi)
                    || join_idx[ai][bi] != sub_poset.lub(ai, bi)
                {
                    matches_poset_ops = false;
                }
            }
        }
        if !matches_poset_ops {
            continue;
        }

        // Detected sublattice: conclusion 3 asserts star-commutation and
        // the Boolean six-tuple axioms.
        let mut all_pairs_star_commute = true;
        for &a in &subset {
            for &b in &subset {
                let dev = (0..np).fold(0.0_f64, |acc, k| {
                    acc.max((star_tab[a][b][k] - star_tab[b][a][k]).norm())
                });
                if dev > tol.probe {
                    all_pairs_star_commute = false;
                }
                max_deviation = max_deviation.max(if dev > tol.probe { dev } else { 0.0 });
            }
        }

        let meet = |a: usize, b: usize| meet_idx[a][b].expect("closed");
        let join = |a: usize, b: usize| join_idx[a][b].expect("closed");
        let comp =
            |a: usize| -> usize { sub_poset.complement[a] };
        let mut boolean_ok = true;
        for a in 0..m {
            // Identities and complements.
            if join(a, 0) != a || meet(a, 1) != a {
                boolean_ok = false;
            }
            if join(a, comp(a)) != 1 || meet(a, comp(a)) != 0 {
                boolean_ok = false;
            }
            for b in 0..m {
                // Commutativity and absorption.
                if meet(a, b) != meet(b, a) || join(a, b) != join(b, a) {
                    boolean_ok = false;
                }
                if join(a, meet(a, b)) != a || meet(a, join(a, b)) != a {
                    boolean_ok = false;
                }
                for c in 0..m {
                    // Associativity and distributivity.
                    if meet(meet(a, b), c) != meet(a, meet(b, c)) {
                        boolean_ok = false;
                    }
                    if join(join(a, b), c) != join(a, join(b, c)) {
                        boolean_ok = false;
                    }
                    if meet(a, join(b, c)) != join(meet(a, b), meet(a, c)) {
                        boolean_ok = false;
                    }
                    if join(a, meet(b, c)) != meet(join(a, b), join(a, c)) {
                        boolean_ok = false;
                    }
                }
            }
        }

        reports.push(BooleanSublatticeReport {
            member_indices: subset.clone(),
            member_labels: subset.iter().map(|&k| labels[k].clone()).collect(),
            closed,
            matches_poset_ops,
            all_pairs_star_commute,
            boolean_ok,
            max_deviation,
        });
    }
    reports
}

/// Indicator functions of all subsets generated by a partition of the
/// universe into atoms; a finite sigma-algebra tabulated for
/// [`functional_logic_check`].
pub fn indicator_family(atom_of: &[usize], n_atoms: usize) -> Vec<SampledFunction> {
    let mut out = Vec::with_capacity(1 << n_atoms);
    for mask in 0..(1u32 << n_atoms) {
        let values: Vec<f64> = atom_of
            .iter()
            .map(|&a| if mask & (1 << a) != 0 { 1.0 } else { 0.0 })
            .collect();
        out.push(SampledFunction::new(format!("ind{mask:b}"), values));
    }
    out
}

/// Tabulate operator-generated events on a shared universe for the
/// functional harness.
pub fn tabulate_events(
    events: &[(String, HermitianOperator)],
    universe: &[ProjectivePoint],
) -> Vec<SampledFunction> {
    events
        .iter()
        .map(|(name, t)| {
            let values = universe
                .iter()
                .map(|p| trace_product(t.matrix(), p.matrix()).re)
                .collect();
            SampledFunction::new(name.clone(), values)
        })
        .collect()
}

/// Universe for tabulating a projector family: Haar points, eigenpoints of
/// every generator, and eigenpoints of pairwise sums (the latter expose
/// points where mu_i + mu_j exceeds 1).
pub fn tabulation_universe<R: rand::Rng + ?Sized>(
    dim: usize,
    generators: &[&HermitianOperator],
    n_haar: usize,
    rng: &mut R,
) -> Vec<ProjectivePoint> {
    let mut points: Vec<ProjectivePoint> = (0..n_haar)
        .map(|_| ProjectivePoint::haar(dim, rng))
        .collect();
    for g in generators {
        points.extend(g.eigenpoints());
    }
    for (i, a) in generators.iter().enumerate() {
        for b in generators.iter().skip(i + 1) {
            let sum: CMatrix = a.matrix() + b.matrix();
            let sum_op = HermitianOperator::new(sum, &Tolerances::default())
                .expect("sum of Hermitian is Hermitian");
            points.extend(sum_op.eigenpoints());
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{plus_point, Projector};
    use crate::rng;
    use crate::starlogic::ProbeSet;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn indicator_sigma_algebra_passes_and_is_boolean() {
        let t = tol();
        // Universe of 9 points split into 3 atoms.
        let atom_of = vec![0, 0, 0, 1, 1, 1, 2, 2, 2];
        let family = indicator_family(&atom_of, 3);
        let report = functional_logic_check(&family, 6, &t).unwrap();
        assert!(report.hypotheses_ok, "{report:?}");
        assert!(report.passed(), "{report:?}");
        let poset = report.poset.expect("conclusions ran");
        assert!(poset.distributive);
    }

    #[test]
    fn missing_complement_aborts_with_witness() {
        let t = tol();
        let family = vec![
            SampledFunction::new("zero", vec![0.0, 0.0]),
            SampledFunction::new("one", vec![1.0, 1.0]),
            SampledFunction::new("lonely", vec![1.0, 0.0]),
        ];
        let report = functional_logic_check(&family, 6, &t).unwrap();
        assert!(!report.hypotheses_ok);
        assert!(report.complement_witness.is_some());
        assert!(report.poset.is_none());
    }

    #[test]
    fn spin_projector_events_pass_the_functional_check() {
        let t = tol();
        let mut rng = rng::stream(301, "mik-spin");
        let p1 = Projector::from_basis_indices(2, &[0]);
        let p_plus = Projector::new(
            HermitianOperator::new(plus_point().matrix().clone(), &t).unwrap(),
            &t,
        )
        .unwrap();
        let gens: Vec<HermitianOperator> = vec![
            Projector::zero(2).operator().clone(),
            Projector::identity(2).operator().clone(),
            p1.operator().clone(),
            crate::operators::orthocomplement(&p1).operator().clone(),
            p_plus.operator().clone(),
            crate::operators::orthocomplement(&p_plus).operator().clone(),
        ];
        let gen_refs: Vec<&HermitianOperator> = gens.iter().collect();
        let universe = tabulation_universe(2, &gen_refs, 64, &mut rng);
        let named: Vec<(String, HermitianOperator)> = gens
            .iter()
            .enumerate()
            .map(|(k, g)| (format!("T{k}"), g.clone()))
            .collect();
        let family = tabulate_events(&named, &universe);
        let report = functional_logic_check(&family, 6, &t).unwrap();
        assert!(report.hypotheses_ok, "{report:?}");
        assert!(report.passed(), "{report:?}");
        let poset = report.poset.expect("ran");
        assert!(!poset.distributive, "spin family is non-Boolean");
    }

    fn spin_events(t: &Tolerances) -> Vec<FuzzyEventQL> {
        let p1 = Projector::from_basis_indices(2, &[0]);
        let p_plus = Projector::new(
            HermitianOperator::new(plus_point().matrix().clone(), t).unwrap(),
            t,
        )
        .unwrap();
        vec![
            FuzzyEventQL::from_projector(&p1),
            FuzzyEventQL::from_projector(&p_plus),
        ]
    }

    #[test]
    fn operator_rule_on_spin_family_passes_all_conclusions() {
        let t = tol();
        let mut rng = rng::stream(302, "harness-spin");
        let family = spin_events(&t);
        let gen_refs: Vec<&HermitianOperator> =
            family.iter().map(|e| e.generator()).collect();
        let probes = ProbeSet::build(2, &gen_refs, 64, &mut rng);
        let report = star_logic_harness(&family, &StarRule::Operator, &probes, &t).unwrap();
        assert!(report.hypotheses_ok, "{report:?}");
        assert!(report.conclusions_passed(), "{report:?}");
        assert!(report.dropped_non_idempotent.is_empty());

        // Detected Boolean sublattices: {0,1}, {0,1,P1,P1'}, {0,1,P+,P+'},
        // but not the full six-element family.
        let sizes: Vec<usize> = report
            .boolean_sublattices
            .iter()
            .map(|b| b.member_indices.len())
            .collect();
        assert!(sizes.contains(&2));
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 2);
        assert!(!sizes.contains(&6), "skew pairs cannot form a sublattice");
        for b in &report.boolean_sublattices {
            assert!(b.boolean_ok && b.all_pairs_star_commute, "{b:?}");
        }
    }

    #[test]
    fn diagonal_family_detects_the_whole_family_as_boolean() {
        let t = tol();
        let mut rng = rng::stream(303, "harness-diag");
        let dim = 4;
        // All diagonal projectors on subsets of {0..3}: a Boolean algebra.
        let mut family: Vec<FuzzyEventQL> = Vec::new();
        for mask in 1u32..15 {
            let indices: Vec<usize> = (0..dim).filter(|i| mask & (1 << i) != 0).collect();
            family.push(FuzzyEventQL::from_projector(&Projector::from_basis_indices(
                dim, &indices,
            )));
        }
        let gen_refs: Vec<&HermitianOperator> =
            family.iter().map(|e| e.generator()).collect();
        let probes = ProbeSet::build(dim, &gen_refs, 64, &mut rng);
        let report = star_logic_harness(&family, &StarRule::Operator, &probes, &t).unwrap();
        assert!(report.hypotheses_ok, "{report:?}");
        assert!(report.conclusions_passed(), "{report:?}");

        let full_size = report.labels.len();
        let largest = report
            .boolean_sublattices
            .iter()
            .map(|b| b.member_indices.len())
            .max()
            .expect("some sublattice");
        assert_eq!(largest, full_size, "whole diagonal family is Boolean");
    }

    #[test]
    fn pointwise_rule_keeps_only_the_bounds() {
        let t = tol();
        let mut rng = rng::stream(304, "harness-pointwise");
        let family = spin_events(&t);
        let gen_refs: Vec<&HermitianOperator> =
            family.iter().map(|e| e.generator()).collect();
        let probes = ProbeSet::build(2, &gen_refs, 64, &mut rng);
        let report =
            star_logic_harness(&family, &StarRule::PointwiseProduct, &probes, &t).unwrap();
        assert_eq!(report.labels.len(), 2, "only empty and universe survive");
        assert_eq!(report.dropped_non_idempotent.len(), 4);
        assert!(report.hypotheses_ok);
        assert!(report.conclusions_passed(), "{report:?}");
    }
}
