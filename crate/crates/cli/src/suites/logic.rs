//! Logic suite: quantum-logic structure built from a projector family, its
//! axioms, states, and the ordering set.

use crate::config::SuiteConfig;
use crate::report::CheckRecord;
use crate::suites::label;
use projlogic_core::io;
use projlogic_core::linalg::max_entry_diff;
use projlogic_core::operators::{
    compatibility_decomposition, lattice_join, lattice_meet, projector_leq, random_projector,
    CompatibilityDecomposition, DensityMatrix, Projector,
};
use projlogic_core::starlogic::{
    build_logic, check_gpm, check_quantum_logic_axioms, ordering_set_check, point_states_for,
    GeneralizedProbabilityMeasure,
};
use projlogic_core::{rng, Result, Tolerances};

/// The default projector family: a join-closed Boolean block of diagonal
/// projectors (all unions of a three-atom partition of the coordinates, or
/// the single basis projector at dimension 2) plus one skew rank-1
/// projector, which makes the logic non-Boolean while keeping every
/// orthogonal join inside the family.
fn default_family(dim: usize, seed: u64, tol: &Tolerances) -> Result<Vec<Projector>> {
    let mut rng = rng::stream(seed, &label("logic", "family"));
    let mut family = Vec::new();
    if dim == 2 {
        family.push(Projector::from_basis_indices(dim, &[0]));
    } else {
        let n_atoms = 3;
        let atom_of: Vec<usize> = (0..dim).map(|i| i % n_atoms).collect();
        for mask in 1u32..((1 << n_atoms) - 1) {
            let indices: Vec<usize> =
                (0..dim).filter(|&i| mask & (1 << atom_of[i]) != 0).collect();
            family.push(Projector::from_basis_indices(dim, &indices));
        }
    }
    family.push(random_projector(dim, 1, &mut rng)?);
    let _ = tol;
    Ok(family)
}

pub fn run(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = &cfg.tol;
    let mut records = Vec::new();

    let (family, family_source) = match &cfg.family {
        Some(path) => {
            let loaded = io::load_family(path, tol)?;
            (loaded.projectors, path.display().to_string())
        }
        None => (
            default_family(cfg.dim, cfg.seed, tol)?,
            "built-in".to_string(),
        ),
    };
    // A family file dictates its own dimension.
    let dim = family.first().map_or(cfg.dim, |p| p.dim());

    let mut build_rng = rng::stream(cfg.seed, &label("logic", "build"));
    let structure = build_logic(&family, 64, &mut build_rng, tol)?;
    records.push(CheckRecord::witness(
        "structure_invariants",
        "projector lattice",
        (structure.len() * structure.len()) as u64,
        true,
        format!(
            "family `{family_source}` closed to {} elements; order, complement, compatibility and orthogonality tables validated",
            structure.len()
        ),
    ));

    let report = check_quantum_logic_axioms(&structure, 6, tol)?;

    records.push(CheckRecord::witness(
        "bounded",
        "projector lattice",
        structure.len() as u64,
        report.bounded_ok,
        "zero and identity bound every element",
    ));
    records.push(CheckRecord::numeric(
        "orthocomplement_involution",
        "projector lattice",
        structure.len() as u64,
        report.involution_dev,
        tol.probe,
        "",
    ));
    records.push(CheckRecord::numeric(
        "complement_meet_join_bounds",
        "projector lattice",
        structure.len() as u64,
        report.complement_bounds_dev,
        tol.probe,
        "P meet not-P = 0 and P join not-P = I",
    ));
    records.push(CheckRecord::numeric(
        "de_morgan",
        "projector lattice",
        (structure.len() * structure.len()) as u64,
        report.de_morgan_dev,
        tol.probe,
        "",
    ));
    records.push(CheckRecord::numeric(
        "orthomodular_law",
        "orthomodular law",
        report.ordered_pairs_checked as u64,
        report.orthomodular_dev,
        tol.probe,
        format!("{} ordered pairs", report.ordered_pairs_checked),
    ));
    records.push(CheckRecord::witness(
        "sigma_orthocompleteness",
        "sigma-orthocompleteness",
        report.orthogonal_families_checked as u64,
        report.sigma_missing.is_empty(),
        if report.sigma_missing.is_empty() {
            format!(
                "joins of {} orthogonal subfamilies present",
                report.orthogonal_families_checked
            )
        } else {
            report.sigma_missing.join("; ")
        },
    ));
    records.push(CheckRecord::witness(
        "poset_axioms",
        "projector lattice",
        structure.len() as u64,
        report.poset.quantum_logic_ok(),
        format!("{:?}", report.poset.order_witness),
    ));

    // Distributivity: families with an incompatible pair must produce a
    // witness triple; all-compatible families must scan distributive.
    {
        let has_incompatible = (0..structure.len()).any(|i| {
            (0..structure.len()).any(|j| !structure.compat()[i][j])
        });
        let witness_text = match report.distributivity_witness {
            Some((p, q, r)) => format!(
                "witness triple ({}, {}, {})",
                structure.labels()[p],
                structure.labels()[q],
                structure.labels()[r]
            ),
            None => "no witness; scan found the structure distributive".to_string(),
        };
        records.push(CheckRecord::witness(
            "distributivity_classification",
            "distributivity",
            (structure.len() * structure.len() * structure.len()) as u64,
            has_incompatible != report.distributive,
            format!(
                "incompatible pairs present: {has_incompatible}; {witness_text}"
            ),
        ));
    }

    // States: density matrices and point states are generalized probability
    // measures; the constant map is not.
    {
        let mut rng = rng::stream(cfg.seed, &label("logic", "states"));
        let mut worst = 0.0_f64;
        let mut families = 0usize;
        for _ in 0..5 {
            let sigma = GeneralizedProbabilityMeasure::Density(DensityMatrix::random(dim, &mut rng));
            let gpm = check_gpm(&sigma, &structure, 6, tol);
            worst = worst.max(gpm.additivity_max_dev).max((gpm.normalization - 1.0).abs());
            families += gpm.families_checked;
        }
        records.push(CheckRecord::numeric(
            "gpm_density_states",
            "probability measure",
            families as u64,
            worst,
            tol.probe,
            "tr(rho T) states: normalized and additive on orthogonal families",
        ));

        let point = GeneralizedProbabilityMeasure::Point(
            projlogic_core::operators::ProjectivePoint::haar(dim, &mut rng),
        );
        let gpm = check_gpm(&point, &structure, 6, tol);
        records.push(CheckRecord::numeric(
            "gpm_point_states",
            "probability measure",
            gpm.families_checked as u64,
            gpm.additivity_max_dev.max((gpm.normalization - 1.0).abs()),
            tol.probe,
            "",
        ));

        let bogus = GeneralizedProbabilityMeasure::Constant(1.0);
        let gpm = check_gpm(&bogus, &structure, 6, tol);
        records.push(CheckRecord::witness(
            "gpm_constant_fails_additivity",
            "probability measure",
            gpm.families_checked as u64,
            !gpm.passed(),
            gpm.additivity_witness.unwrap_or_else(|| "no witness found".into()),
        ));
    }

    // Point states form an ordering set.
    {
        let states = point_states_for(&structure);
        let report = ordering_set_check(&states, &structure, tol);
        records.push(CheckRecord::witness(
            "ordering_set_point_states",
            "ordering set",
            (states.len() * structure.len()) as u64,
            report.passed(),
            format!(
                "{} non-ordered pairs separated by witness states",
                report.non_ordered_pairs
            ),
        ));
    }

    // Compatibility decompositions for every compatible pair in the family.
    {
        let mut worst = 0.0_f64;
        let mut disagreements = 0usize;
        let mut pairs = 0u64;
        for i in 0..structure.len() {
            for j in 0..structure.len() {
                let pi = Projector::new(structure.elements()[i].generator().clone(), tol)?;
                let pj = Projector::new(structure.elements()[j].generator().clone(), tol)?;
                match compatibility_decomposition(&pi, &pj, tol)? {
                    CompatibilityDecomposition::Compatible { p_only, shared, .. } => {
                        if !structure.compat()[i][j] {
                            disagreements += 1;
                        }
                        let back = lattice_join(&p_only, &shared, tol)?;
                        worst = worst.max(max_entry_diff(back.matrix(), pi.matrix()));
                    }
                    CompatibilityDecomposition::Incompatible { .. } => {
                        if structure.compat()[i][j] {
                            disagreements += 1;
                        }
                    }
                }
                pairs += 1;
            }
        }
        records.push(CheckRecord::witness(
            "compatibility_decomposition",
            "compatibility",
            pairs,
            disagreements == 0 && worst < tol.probe,
            format!("{disagreements} disagreements; max reconstruction dev {worst:.3e}"),
        ));
    }

    // Meets are greatest lower bounds: below both arguments, and above the
    // sub-projectors of the meet.
    {
        let mut ok = true;
        for i in 0..structure.len() {
            for j in 0..structure.len() {
                let pi = Projector::new(structure.elements()[i].generator().clone(), tol)?;
                let pj = Projector::new(structure.elements()[j].generator().clone(), tol)?;
                let meet = lattice_meet(&pi, &pj, tol)?;
                ok &= projector_leq(&meet, &pi, tol)?;
                ok &= projector_leq(&meet, &pj, tol)?;
                ok &= projector_leq(&meet, &meet, tol)?;
                let basis = meet.range_basis();
                for take in 1..=basis.len() {
                    let sub = Projector::from_orthonormal_columns(&basis[..take]);
                    ok &= projector_leq(&sub, &meet, tol)?;
                    ok &= projector_leq(&sub, &pi, tol)?;
                    ok &= projector_leq(&sub, &pj, tol)?;
                }
            }
        }
        records.push(CheckRecord::witness(
            "meet_is_greatest_lower_bound",
            "projector lattice",
            (structure.len() * structure.len()) as u64,
            ok,
            "meets below both arguments; sub-projectors of the meet below everything",
        ));
    }

    Ok(records)
}
