//! Deformed-product suite: the star-product harness on commuting and
//! non-commuting families, and the undeformed pointwise baseline.

use crate::config::SuiteConfig;
use crate::report::CheckRecord;
use crate::suites::label;
use projlogic_core::io;
use projlogic_core::operators::{HermitianOperator, Projector};
use projlogic_core::starlogic::{star_logic_harness, FuzzyEventQL, ProbeSet, StarRule};
use projlogic_core::{rng, Result};

/// All unions of a partition of the coordinate indices into at most four
/// atoms: a Boolean algebra of diagonal projectors at any dimension.
fn diagonal_boolean_family(dim: usize) -> Vec<FuzzyEventQL> {
    let n_atoms = dim.min(4);
    let atom_of: Vec<usize> = (0..dim).map(|i| i % n_atoms).collect();
    let mut out = Vec::new();
    for mask in 1u32..((1 << n_atoms) - 1) {
        let indices: Vec<usize> = (0..dim).filter(|&i| mask & (1 << atom_of[i]) != 0).collect();
        out.push(FuzzyEventQL::from_projector(&Projector::from_basis_indices(
            dim, &indices,
        )));
    }
    out
}

fn spin_family(cfg: &SuiteConfig) -> Result<Vec<FuzzyEventQL>> {
    let tol = &cfg.tol;
    let p1 = Projector::from_basis_indices(2, &[0]);
    let p_plus = Projector::new(
        HermitianOperator::new(
            projlogic_core::operators::plus_point().matrix().clone(),
            tol,
        )?,
        tol,
    )?;
    Ok(vec![
        FuzzyEventQL::from_projector(&p1),
        FuzzyEventQL::from_projector(&p_plus),
    ])
}

fn probes_for(family: &[FuzzyEventQL], seed: u64, purpose: &str) -> ProbeSet {
    let dim = family.first().map_or(2, |e| e.dim());
    let refs: Vec<&HermitianOperator> = family.iter().map(|e| e.generator()).collect();
    ProbeSet::build(
        dim,
        &refs,
        64,
        &mut rng::stream(seed, &label("main-theorem", purpose)),
    )
}

pub fn run(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = &cfg.tol;
    let mut records = Vec::new();

    // Commuting diagonal family: everything passes and the largest detected
    // Boolean sublattice is the whole family.
    {
        let family = match &cfg.family {
            Some(path) => io::load_family(path, tol)?
                .projectors
                .iter()
                .map(FuzzyEventQL::from_projector)
                .collect(),
            None => diagonal_boolean_family(cfg.dim),
        };
        let probes = probes_for(&family, cfg.seed, "diagonal");
        let report = star_logic_harness(&family, &StarRule::Operator, &probes, tol)?;
        let full_size = report.labels.len();
        let largest = report
            .boolean_sublattices
            .iter()
            .map(|b| b.member_indices.len())
            .max()
            .unwrap_or(0);
        let whole_family_boolean = cfg.family.is_none() && largest == full_size;
        records.push(CheckRecord::witness(
            "commuting_family_harness",
            "deformed product logic",
            full_size as u64,
            report.hypotheses_ok && report.conclusions_passed(),
            format!(
                "{} elements; hypotheses {}; largest Boolean sublattice {largest}",
                full_size,
                if report.hypotheses_ok { "pass" } else { "fail" }
            ),
        ));
        if cfg.family.is_none() {
            records.push(CheckRecord::witness(
                "commuting_family_is_fully_boolean",
                "deformed product logic",
                full_size as u64,
                whole_family_boolean,
                format!("largest detected sublattice {largest} of {full_size}"),
            ));
        }
    }

    // Two-level skew family: hypotheses and conclusions pass; Boolean
    // sublattices are exactly the commuting subfamilies.
    {
        let family = spin_family(cfg)?;
        let probes = probes_for(&family, cfg.seed, "spin");
        let report = star_logic_harness(&family, &StarRule::Operator, &probes, tol)?;
        records.push(CheckRecord::witness(
            "skew_family_harness",
            "deformed product logic",
            report.labels.len() as u64,
            report.hypotheses_ok && report.conclusions_passed(),
            format!(
                "6-element family; orthogonality iff vanishing star: {:?}",
                report.orth_iff_star_zero
            ),
        ));

        let sizes: Vec<usize> = report
            .boolean_sublattices
            .iter()
            .map(|b| b.member_indices.len())
            .collect();
        let expected = sizes.iter().filter(|&&s| s == 4).count() == 2
            && sizes.contains(&2)
            && !sizes.contains(&6);
        records.push(CheckRecord::witness(
            "boolean_sublattices_are_commuting_subfamilies",
            "deformed product logic",
            report.boolean_sublattices.len() as u64,
            expected
                && report
                    .boolean_sublattices
                    .iter()
                    .all(|b| b.boolean_ok && b.all_pairs_star_commute),
            format!("detected sublattice sizes {sizes:?}"),
        ));
    }

    // Undeformed pointwise product: only the bounds are idempotent, leaving
    // the degenerate two-element logic.
    {
        let family = spin_family(cfg)?;
        let probes = probes_for(&family, cfg.seed, "pointwise");
        let report = star_logic_harness(&family, &StarRule::PointwiseProduct, &probes, tol)?;
        records.push(CheckRecord::witness(
            "pointwise_product_degenerates",
            "deformed product logic",
            report.labels.len() as u64,
            report.labels.len() == 2
                && report.dropped_non_idempotent.len() == 4
                && report.hypotheses_ok
                && report.conclusions_passed(),
            format!(
                "{} survivors, {} dropped as non-idempotent",
                report.labels.len(),
                report.dropped_non_idempotent.len()
            ),
        ));
    }

    Ok(records)
}
