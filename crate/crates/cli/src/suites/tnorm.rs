//! Fuzzy-operations suite: t-norm axioms on the grid, De Morgan duality,
//! the clipped-sum identity, complements, inclusion paths and grades.

use crate::config::SuiteConfig;
use crate::report::CheckRecord;
use crate::suites::label;
use projlogic_core::fuzzy::{
    complement, fuzzy_leq, grade_class, tconorm_apply, tnorm_apply, tnorm_axiom_check, GradeClass,
    MembershipFunction, TNorm,
};
use projlogic_core::operators::{
    random_projector, HermitianOperator, Projector, ProjectivePoint,
};
use projlogic_core::{rng, Result};

pub fn run(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = &cfg.tol;
    let dim = cfg.dim;
    let resolution = 101usize;
    let mut records = Vec::new();

    // Axiom battery for the built-in norms: zero violations expected.
    for norm in [TNorm::Lukasiewicz, TNorm::Product] {
        let mut rng = rng::stream(cfg.seed, &label("tnorm", norm.name()));
        let report = tnorm_axiom_check(&norm, resolution, 10_000, &mut rng, tol);
        let trials = (resolution * resolution * resolution + 10_000) as u64;
        let max_dev = report
            .commutativity
            .max_deviation
            .max(report.monotonicity.max_deviation)
            .max(report.associativity.max_deviation)
            .max(report.unit.max_deviation);
        let violations = report.commutativity.violations
            + report.monotonicity.violations
            + report.associativity.violations
            + report.unit.violations;
        records.push(CheckRecord::witness(
            &format!("{}_axioms", norm.name()),
            "t-norm axioms",
            trials,
            report.all_passed(),
            format!("{violations} grid violations; max deviation {max_dev:.3e}"),
        ));
    }

    // The constructed counterexample breaks the unit law by exactly 0.25 at
    // x = 0.5.
    {
        let mut rng = rng::stream(cfg.seed, &label("tnorm", "counterexample"));
        let bad = TNorm::custom("squared-min", |x, y| x.min(y).powi(2));
        let report = tnorm_axiom_check(&bad, resolution, 0, &mut rng, tol);
        let ok = !report.unit.passed()
            && (report.unit.max_deviation - 0.25).abs() < 1e-12
            && (report.unit.worst.0 - 0.5).abs() < 1e-12;
        records.push(CheckRecord::witness(
            "counterexample_fails_unit_axiom",
            "t-norm axioms",
            (resolution * resolution) as u64,
            ok,
            format!(
                "unit violation {:.6} at x = {}",
                report.unit.max_deviation, report.unit.worst.0
            ),
        ));
    }

    // Probe memberships for the pointwise checks.
    let mut probe_rng = rng::stream(cfg.seed, &label("tnorm", "probes"));
    let probes: Vec<ProjectivePoint> = (0..64)
        .map(|_| ProjectivePoint::haar(dim, &mut probe_rng))
        .collect();
    let a = MembershipFunction::from_operator(
        random_projector(dim, 1, &mut probe_rng)?.operator().clone(),
        tol,
    )?;
    let b = MembershipFunction::from_operator(
        random_projector(dim, 1 + (dim - 1) / 2, &mut probe_rng)?
            .operator()
            .clone(),
        tol,
    )?;

    // De Morgan duality of the derived conorm, both built-ins.
    {
        let mut worst = 0.0_f64;
        for norm in [TNorm::Lukasiewicz, TNorm::Product] {
            let direct = tconorm_apply(&norm, &a, &b)?;
            let dual = complement(&tnorm_apply(&norm, &complement(&a), &complement(&b))?);
            for p in &probes {
                worst = worst.max((direct.eval(p) - dual.eval(p)).abs());
            }
        }
        records.push(CheckRecord::numeric(
            "de_morgan_duality",
            "fuzzy set operations",
            (2 * probes.len()) as u64,
            worst,
            tol.grid,
            "s(x, y) = 1 - t(1 - x, 1 - y) applied to memberships",
        ));
    }

    // Clipped-sum union and intersection reproduce the bounded-sum formulas
    // exactly on dyadic rational grades.
    {
        let luk = TNorm::Lukasiewicz;
        let mut worst = 0.0_f64;
        for i in 0..=64 {
            for j in 0..=64 {
                let x = i as f64 / 64.0;
                let y = j as f64 / 64.0;
                worst = worst
                    .max((luk.conorm(x, y) - (x + y).min(1.0)).abs())
                    .max((luk.apply(x, y) - (x + y - 1.0).max(0.0)).abs());
            }
        }
        records.push(CheckRecord::numeric(
            "clipped_sum_operations",
            "fuzzy set operations",
            65 * 65,
            worst,
            0.0,
            "union min(x+y, 1) and intersection max(x+y-1, 0), exact on dyadic grades",
        ));
    }

    // Product intersection of operator events is the pointwise product.
    {
        let meet = tnorm_apply(&TNorm::Product, &a, &b)?;
        let mut worst = 0.0_f64;
        for p in &probes {
            worst = worst.max((meet.eval(p) - a.eval(p) * b.eval(p)).abs());
        }
        records.push(CheckRecord::numeric(
            "product_intersection_baseline",
            "fuzzy set operations",
            probes.len() as u64,
            worst,
            0.0,
            "the commutative baseline the star product deforms",
        ));
    }

    // Boundary law t(x, 0) = 0 for both built-ins.
    {
        let mut worst = 0.0_f64;
        for norm in [TNorm::Lukasiewicz, TNorm::Product] {
            for i in 0..=100 {
                let x = i as f64 / 100.0;
                worst = worst.max(norm.apply(x, 0.0).abs());
            }
        }
        records.push(CheckRecord::numeric(
            "boundary_law",
            "t-norm axioms",
            202,
            worst,
            0.0,
            "t(x, 0) = 0",
        ));
    }

    // Complement involution, preserving the operator representation.
    {
        let back = complement(&complement(&a));
        let mut worst = 0.0_f64;
        for p in &probes {
            worst = worst.max((back.eval(p) - a.eval(p)).abs());
        }
        records.push(CheckRecord::witness(
            "complement_involution",
            "fuzzy set operations",
            probes.len() as u64,
            worst < tol.grid && back.generator().is_some(),
            format!("max deviation {worst:.3e}; operator form preserved"),
        ));
    }

    // Inclusion: the exact operator path agrees with the pointwise path.
    {
        let mut rng = rng::stream(cfg.seed, &label("tnorm", "leq"));
        let mut disagreements = 0usize;
        for _ in 0..100 {
            let ta = random_projector(dim, 1, &mut rng)?;
            let tb = random_projector(dim, dim - 1, &mut rng)?;
            let fa = MembershipFunction::from_operator(ta.operator().clone(), tol)?;
            let fb = MembershipFunction::from_operator(tb.operator().clone(), tol)?;
            let operator_path = fuzzy_leq(&fa, &fb, &probes, tol)?;
            // Pointwise-only view of the same pair.
            let (ga, gb) = (fa.clone(), fb.clone());
            let fa_pw = MembershipFunction::from_fn(dim, move |p| ga.eval(p));
            let fb_pw = MembershipFunction::from_fn(dim, move |p| gb.eval(p));
            let pointwise_path = fuzzy_leq(&fa_pw, &fb_pw, &probes, tol)?;
            // The pointwise path can only be fooled toward `true` by an
            // unlucky probe set; it must never contradict a true inclusion.
            if operator_path && !pointwise_path {
                disagreements += 1;
            }
        }
        records.push(CheckRecord::witness(
            "fuzzy_inclusion_paths",
            "fuzzy set operations",
            100,
            disagreements == 0,
            format!("{disagreements} contradictions between operator and probe paths"),
        ));
    }

    // Grade classification at the extreme and intermediate cases.
    {
        let p0 = ProjectivePoint::standard(dim, 0);
        let one = MembershipFunction::from_operator(HermitianOperator::identity(dim), tol)?;
        let zero =
            MembershipFunction::from_operator(Projector::zero(dim).operator().clone(), tol)?;
        let e1 = MembershipFunction::from_operator(
            Projector::from_basis_indices(dim, &[0]).operator().clone(),
            tol,
        )?;
        let mut skew_rng = rng::stream(cfg.seed, &label("tnorm", "grade"));
        let skew_point = ProjectivePoint::haar(dim, &mut skew_rng);
        let ok = grade_class(&one, &p0, tol) == GradeClass::Included
            && grade_class(&zero, &p0, tol) == GradeClass::NotIncluded
            && grade_class(&e1, &skew_point, tol) == GradeClass::Partial;
        records.push(CheckRecord::witness(
            "grade_classification",
            "fuzzy set operations",
            3,
            ok,
            "full, empty, and fuzzy membership grades",
        ));
    }

    Ok(records)
}
