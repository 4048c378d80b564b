//! Acceptance suite: one test per release criterion, each printing a
//! pass/fail line. Tolerances are pinned here, not configurable.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use projlogic_core::dynamics::{flow_deviation, hamilton_flow, schrodinger_flow};
use projlogic_core::fuzzy::{tnorm_axiom_check, MembershipFunction, TNorm};
use projlogic_core::geometry::{
    complex_structure, frame_function_deviation, fubini_study_metric, hamiltonian_vector_field,
    random_tangent, symplectic_form, ObservableFunction, TangentVector,
};
use projlogic_core::linalg::{commutator, cr, max_entry_diff, spectral_norm, CVector};
use projlogic_core::measure::{
    dirac_reproducing_check, mc_integrate, moment1_exact, moment2_exact, LiouvilleDensity,
};
use projlogic_core::operators::{
    haar_unitary, lattice_join, lattice_meet, pauli_z, plus_point,
    projector_leq, random_hermitian, random_proper_projector, random_projector, DensityMatrix,
    HermitianOperator, Projector, ProjectivePoint,
};
use projlogic_core::starlogic::{
    build_logic, check_quantum_logic_axioms, functional_logic_check, indicator_family,
    is_compatible, is_idempotent, is_orthogonal, join_meet_membership, order_iso_h,
    star_geometric_ops, star_logic_harness, star_value_ops, FuzzyEventQL, ProbeSet, StarRule,
};
use projlogic_core::{rng, Tolerances};
use std::time::Instant;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn report(criterion: &str, passed: bool, detail: &str) {
    println!(
        "{} criterion {criterion}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} failed: {detail}");
}

/// Star identity: the geometric three-term evaluation agrees with the closed
/// form within 1e-9 on 10^3 random triples per dimension 2..=5, in under
/// 30 seconds.
#[test]
fn criterion_1_star_identity() {
    let t = tol();
    let start = Instant::now();
    let mut worst = 0.0_f64;
    for dim in 2..=5 {
        let mut rng = rng::stream(11, &format!("acceptance/star-identity/{dim}"));
        for _ in 0..1000 {
            let a = random_hermitian(dim, 1.0, &mut rng);
            let b = random_hermitian(dim, 1.0, &mut rng);
            let p = ProjectivePoint::haar(dim, &mut rng);
            let closed = star_value_ops(&a, &b, &p);
            let geometric = star_geometric_ops(&a, &b, &p, &t).expect("geometry evaluates");
            worst = worst.max((closed - geometric).norm());
        }
    }
    let elapsed = start.elapsed();
    report(
        "1 (star identity)",
        worst < 1e-9 && elapsed.as_secs() < 30,
        &format!(
            "max |closed - geometric| = {worst:.3e} over 4000 triples in {:.2?}",
            elapsed
        ),
    );
}

/// Kahler structure: gauge invariance of omega and g at 1e-10, the squared
/// complex structure at 1e-9, and the Hamiltonian-field defining identity at
/// 1e-8, each on 10^3 probes.
#[test]
fn criterion_2_kahler_structure() {
    let t = tol();
    let mut gauge = 0.0_f64;
    let mut involution = 0.0_f64;
    let mut defining = 0.0_f64;
    for dim in 2..=5 {
        let mut rng = rng::stream(13, &format!("acceptance/kahler/{dim}"));
        for _ in 0..250 {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let a = random_hermitian(dim, 1.0, &mut rng);
            let b = random_hermitian(dim, 1.0, &mut rng);
            let u = TangentVector::from_generator(&p, &a).unwrap();
            let v = TangentVector::from_generator(&p, &b).unwrap();
            let shift = projlogic_core::geometry::commuting_with_point(&p, &mut rng);
            let shifted = TangentVector::from_generator(&p, &b.add(&shift).unwrap()).unwrap();
            gauge = gauge
                .max(
                    (symplectic_form(&u, &v, &t).unwrap()
                        - symplectic_form(&u, &shifted, &t).unwrap())
                    .abs(),
                )
                .max(
                    (fubini_study_metric(&u, &v, &t).unwrap()
                        - fubini_study_metric(&u, &shifted, &t).unwrap())
                    .abs(),
                );

            let w = random_tangent(&p, &mut rng);
            let jjw = complex_structure(&complex_structure(&w));
            involution =
                involution.max(max_entry_diff(jjw.value(), &w.value().map(|z| -z)));

            let f = ObservableFunction::new(random_hermitian(dim, 1.0, &mut rng));
            let field = hamiltonian_vector_field(&f, &p, &mut rng, &t).unwrap();
            let probe = random_tangent(&p, &mut rng);
            defining = defining.max(
                (symplectic_form(&field, &probe, &t).unwrap()
                    - f.directional_derivative(&probe))
                .abs(),
            );
        }
    }
    report(
        "2 (Kahler structure)",
        gauge < 1e-10 && involution < 1e-9 && defining < 1e-8,
        &format!(
            "gauge {gauge:.3e} (<1e-10), j*j defect {involution:.3e} (<1e-9), field identity {defining:.3e} (<1e-8)"
        ),
    );
}

/// Measure layer: Monte-Carlo moments within 4 standard errors at 2*10^4
/// samples; exact density identities below 1e-12; the reproducing property
/// below 1e-9 for operator memberships and above 0.05 for the non-affine
/// corpus; frame-sum constancy below 1e-9.
#[test]
fn criterion_3_measure_layer() {
    let t = tol();
    let n_samples = 20_000;
    let mut moment_sigmas = 0.0_f64;
    let mut density_dev = 0.0_f64;
    let mut reproducing_obs = 0.0_f64;
    let mut reproducing_bad = f64::INFINITY;
    let mut frame_dev = 0.0_f64;

    for dim in 2..=4 {
        let mut rng = rng::stream(17, &format!("acceptance/measure/{dim}"));
        for k in 0..5 {
            let a = random_hermitian(dim, 1.0, &mut rng);
            let b = random_hermitian(dim, 1.0, &mut rng);
            let m1 = mc_integrate(
                &|p| a.expectation(p),
                dim,
                n_samples,
                &mut rng::stream(17, &format!("acceptance/measure-m1/{dim}/{k}")),
            );
            moment_sigmas = moment_sigmas
                .max((m1.mean - moment1_exact(&a)).abs() / (m1.std_error + 1e-15));
            let m2 = mc_integrate(
                &|p| a.expectation(p) * b.expectation(p),
                dim,
                n_samples,
                &mut rng::stream(17, &format!("acceptance/measure-m2/{dim}/{k}")),
            );
            moment_sigmas = moment_sigmas
                .max((m2.mean - moment2_exact(&a, &b).unwrap()).abs() / (m2.std_error + 1e-15));
        }

        // Exact density identities.
        for _ in 0..5 {
            let sigma = DensityMatrix::random(dim, &mut rng);
            let density = LiouvilleDensity::new(sigma.clone(), &mut rng, &t).unwrap();
            density_dev = density_dev.max((density.integral_oracle() - 1.0).abs());
            let a = random_hermitian(dim, 1.0, &mut rng);
            let lhs = density.expectation_oracle(&a).unwrap();
            let rhs = projlogic_core::linalg::trace_product(sigma.matrix(), a.matrix()).re;
            density_dev = density_dev.max((lhs - rhs).abs());
        }

        // Reproducing property, exact path.
        for _ in 0..5 {
            let proj = random_projector(dim, 1, &mut rng).unwrap();
            let effect = HermitianOperator::new(proj.matrix().map(|z| z * cr(0.6)), &t).unwrap();
            let mu = MembershipFunction::from_operator(effect, &t).unwrap();
            let p0 = ProjectivePoint::haar(dim, &mut rng);
            reproducing_obs =
                reproducing_obs.max(dirac_reproducing_check(&mu, &p0, 1000, &mut rng).defect);
        }

        // Fixed non-affine corpus: powers of x = tr(P p) evaluated at the
        // point of P itself.
        let proj = random_projector(dim, 1, &mut rng).unwrap();
        let p0 = proj
            .operator()
            .eigenpoints()
            .pop()
            .expect("top eigenpoint");
        for power in [2i32, 4] {
            let base = proj.operator().clone();
            let mu = MembershipFunction::from_fn(dim, move |p| base.expectation(p).powi(power));
            let defect = dirac_reproducing_check(&mu, &p0, n_samples, &mut rng).defect;
            reproducing_bad = reproducing_bad.min(defect);
        }
        let base = proj.operator().clone();
        let mu = MembershipFunction::from_fn(dim, move |p| (1.0 - base.expectation(p)).powi(2));
        reproducing_bad =
            reproducing_bad.min(dirac_reproducing_check(&mu, &p0, n_samples, &mut rng).defect);

        // Frame sums of observable fields.
        for _ in 0..5 {
            let a = random_hermitian(dim, 1.0, &mut rng);
            frame_dev = frame_dev.max(frame_function_deviation(
                &|p| a.expectation(p),
                dim,
                10,
                &mut rng,
            ));
        }
    }

    report(
        "3 (measure layer)",
        moment_sigmas < 4.0
            && density_dev < 1e-12
            && reproducing_obs < 1e-9
            && reproducing_bad > 0.05
            && frame_dev < 1e-9,
        &format!(
            "moments {moment_sigmas:.2} sigma (<4), density identities {density_dev:.2e} (<1e-12), reproducing {reproducing_obs:.2e} (<1e-9) vs corpus min {reproducing_bad:.3} (>0.05), frame {frame_dev:.2e} (<1e-9)"
        ),
    );
}

fn spin_projectors(t: &Tolerances) -> Vec<Projector> {
    let p1 = Projector::from_basis_indices(2, &[0]);
    let p_plus = Projector::new(
        HermitianOperator::new(plus_point().matrix().clone(), t).unwrap(),
        t,
    )
    .unwrap();
    vec![p1, p_plus]
}

fn diagonal_projectors(dim: usize) -> Vec<Projector> {
    let n_atoms = dim.min(3);
    let atom_of: Vec<usize> = (0..dim).map(|i| i % n_atoms).collect();
    let mut out = Vec::new();
    for mask in 1u32..((1 << n_atoms) - 1) {
        let indices: Vec<usize> = (0..dim).filter(|&i| mask & (1 << atom_of[i]) != 0).collect();
        out.push(Projector::from_basis_indices(dim, &indices));
    }
    out
}

/// Logic layer: zero classification disagreements over >= 200 pairs per
/// dimension for idempotence/compatibility/orthogonality; the order
/// isomorphism preserves and reflects order over 10^3 pairs; the
/// orthomodular law holds at 1e-9 on the spin and diagonal families; the
/// two-level distributivity witness is found.
#[test]
fn criterion_4_logic_layer() {
    let t = tol();
    let mut disagreements = 0usize;
    let mut pairs = 0usize;

    for dim in 2..=5 {
        let mut rng = rng::stream(19, &format!("acceptance/logic/{dim}"));
        for k in 0..200 {
            // Idempotence corpus: projectors vs scaled projectors.
            let proj = random_proper_projector(dim, &mut rng);
            let event = if k % 2 == 0 {
                FuzzyEventQL::from_projector(&proj)
            } else {
                let scale: f64 = 0.3 + 0.4 * ((k % 5) as f64) / 5.0;
                FuzzyEventQL::from_effect(
                    HermitianOperator::new(proj.matrix().map(|z| z * cr(scale)), &t).unwrap(),
                    &t,
                )
                .unwrap()
            };
            let probes = ProbeSet::build(dim, &[event.generator()], 8, &mut rng);
            if is_idempotent(&event, &probes, &t).unwrap() != (k % 2 == 0) {
                disagreements += 1;
            }

            // Compatibility and orthogonality: constructed ground truth.
            let frame = haar_unitary(dim, &mut rng);
            let columns: Vec<CVector> = (0..dim)
                .map(|j| CVector::from(frame.column(j).clone_owned()))
                .collect();
            let (pa, pb, expect_compat, expect_orth) = match k % 3 {
                0 => {
                    let a = Projector::from_orthonormal_columns(&columns[..1]);
                    let b = Projector::from_orthonormal_columns(&columns[1..]);
                    (a, b, true, true)
                }
                1 => {
                    let a = Projector::from_orthonormal_columns(&columns[..1 + (dim - 1) / 2]);
                    let b = Projector::from_orthonormal_columns(&columns[..1]);
                    (a, b, true, false)
                }
                _ => {
                    let a = random_proper_projector(dim, &mut rng);
                    let b = random_proper_projector(dim, &mut rng);
                    let commutes =
                        spectral_norm(&commutator(a.matrix(), b.matrix())) < t.op_cert;
                    let product_zero =
                        spectral_norm(&(a.matrix() * b.matrix())) < t.op_cert;
                    (a, b, commutes, product_zero)
                }
            };
            let ea = FuzzyEventQL::from_projector(&pa);
            let eb = FuzzyEventQL::from_projector(&pb);
            let probes = ProbeSet::build(dim, &[ea.generator(), eb.generator()], 8, &mut rng);
            if is_compatible(&ea, &eb, &probes, &t).unwrap() != expect_compat {
                disagreements += 1;
            }
            if is_orthogonal(&ea, &eb, &probes, &t).unwrap() != expect_orth {
                disagreements += 1;
            }
            pairs += 1;
        }
    }

    // Order isomorphism over 10^3 pairs.
    let mut order_disagreements = 0usize;
    {
        let mut rng = rng::stream(19, "acceptance/logic/order-iso");
        let probes: Vec<ProjectivePoint> =
            (0..16).map(|_| ProjectivePoint::haar(3, &mut rng)).collect();
        for _ in 0..1000 {
            let p = random_proper_projector(3, &mut rng);
            let q = random_proper_projector(3, &mut rng);
            let lhs = projector_leq(&p, &q, &t).unwrap();
            let rhs = projlogic_core::fuzzy::fuzzy_leq(
                order_iso_h(&p).membership(),
                order_iso_h(&q).membership(),
                &probes,
                &t,
            )
            .unwrap();
            if lhs != rhs {
                order_disagreements += 1;
            }
        }
    }

    // Orthomodular law on the spin and diagonal families.
    let mut orthomodular_dev = 0.0_f64;
    let witness_found;
    {
        let mut rng = rng::stream(19, "acceptance/logic/structures");
        let spin = build_logic(&spin_projectors(&t), 32, &mut rng, &t).unwrap();
        let spin_report = check_quantum_logic_axioms(&spin, 6, &t).unwrap();
        orthomodular_dev = orthomodular_dev.max(spin_report.orthomodular_dev);
        witness_found = spin_report.distributivity_witness.is_some();

        let diag = build_logic(&diagonal_projectors(4), 32, &mut rng, &t).unwrap();
        let diag_report = check_quantum_logic_axioms(&diag, 6, &t).unwrap();
        orthomodular_dev = orthomodular_dev.max(diag_report.orthomodular_dev);
        assert!(diag_report.distributive, "diagonal family is Boolean");
    }

    report(
        "4 (logic layer)",
        disagreements == 0
            && order_disagreements == 0
            && orthomodular_dev < 1e-9
            && witness_found,
        &format!(
            "{disagreements} classification disagreements over {pairs} pairs, {order_disagreements} order disagreements over 1000 pairs, orthomodular defect {orthomodular_dev:.2e} (<1e-9), distributivity witness found: {witness_found}"
        ),
    );
}

/// Star-formula joins and meets agree with the kernel-construction lattice
/// at 1e-9 on every compatible pair of the test families.
#[test]
fn criterion_5_star_join_meet() {
    let t = tol();
    let mut worst = 0.0_f64;
    let mut compatible_pairs = 0usize;

    let mut families: Vec<Vec<Projector>> = vec![spin_projectors(&t)];
    for dim in 3..=5 {
        families.push(diagonal_projectors(dim));
    }
    let mut rng = rng::stream(23, "acceptance/join-meet");
    for family in families {
        let structure = build_logic(&family, 32, &mut rng, &t).unwrap();
        for i in 0..structure.len() {
            for j in 0..structure.len() {
                if !structure.compat()[i][j] {
                    continue;
                }
                compatible_pairs += 1;
                let jm = join_meet_membership(
                    &structure.elements()[i],
                    &structure.elements()[j],
                    structure.probes(),
                    &t,
                )
                .unwrap();
                let pi = Projector::new(structure.elements()[i].generator().clone(), &t).unwrap();
                let pj = Projector::new(structure.elements()[j].generator().clone(), &t).unwrap();
                worst = worst
                    .max(max_entry_diff(
                        jm.meet.generator().matrix(),
                        lattice_meet(&pi, &pj, &t).unwrap().matrix(),
                    ))
                    .max(max_entry_diff(
                        jm.join.generator().matrix(),
                        lattice_join(&pi, &pj, &t).unwrap().matrix(),
                    ));
            }
        }
    }
    report(
        "5 (star join/meet vs lattice)",
        worst < 1e-9 && compatible_pairs > 100,
        &format!("max deviation {worst:.2e} over {compatible_pairs} compatible pairs"),
    );
}

/// Both harnesses: the indicator family passes as a Boolean logic; the
/// two-level spin family passes the closure hypotheses and all conclusions
/// with Boolean sublattices exactly the commuting subfamilies; total runtime
/// under one minute.
#[test]
fn criterion_6_theorem_harnesses() {
    let t = tol();
    let start = Instant::now();

    let atom_of: Vec<usize> = (0..12).map(|k| k % 3).collect();
    let indicators = indicator_family(&atom_of, 3);
    let functional = functional_logic_check(&indicators, 6, &t).unwrap();
    let indicator_ok =
        functional.passed() && functional.poset.as_ref().is_some_and(|p| p.distributive);

    let spin: Vec<FuzzyEventQL> = spin_projectors(&t)
        .iter()
        .map(FuzzyEventQL::from_projector)
        .collect();
    let refs: Vec<&HermitianOperator> = spin.iter().map(|e| e.generator()).collect();
    let probes = ProbeSet::build(
        2,
        &refs,
        64,
        &mut rng::stream(29, "acceptance/harness/spin"),
    );
    let harness = star_logic_harness(&spin, &StarRule::Operator, &probes, &t).unwrap();
    let sizes: Vec<usize> = harness
        .boolean_sublattices
        .iter()
        .map(|b| b.member_indices.len())
        .collect();
    let sublattices_ok = sizes.iter().filter(|&&s| s == 4).count() == 2
        && sizes.contains(&2)
        && !sizes.contains(&6)
        && harness
            .boolean_sublattices
            .iter()
            .all(|b| b.boolean_ok && b.all_pairs_star_commute);
    let spin_ok = harness.hypotheses_ok && harness.conclusions_passed();

    let elapsed = start.elapsed();
    report(
        "6 (theorem harnesses)",
        indicator_ok && spin_ok && sublattices_ok && elapsed.as_secs() < 60,
        &format!(
            "indicator family Boolean: {indicator_ok}; spin family conclusions: {spin_ok}; Boolean sublattice sizes {sizes:?}; {elapsed:.2?}"
        ),
    );
}

/// Dynamics: the integrated flow tracks the exact flow below 1e-8 at
/// dt = 1e-3 over a full period of the two-level diagonal Hamiltonian;
/// halving dt divides the defect by 8 to 32; density transport defect is
/// below 1e-10.
#[test]
fn criterion_7_dynamics() {
    let t = tol();
    let times: Vec<f64> = (0..=40)
        .map(|k| 2.0 * std::f64::consts::PI * k as f64 / 40.0)
        .collect();
    let exact = schrodinger_flow(&pauli_z(), &plus_point(), &times, &t).unwrap();
    let integrated = hamilton_flow(&pauli_z(), &plus_point(), &times, 1e-3, &t).unwrap();
    let deviation = flow_deviation(&exact, &integrated);

    let coarse = hamilton_flow(&pauli_z(), &plus_point(), &times, 1e-2, &t).unwrap();
    let fine = hamilton_flow(&pauli_z(), &plus_point(), &times, 5e-3, &t).unwrap();
    let ratio = flow_deviation(&exact, &coarse) / flow_deviation(&exact, &fine);

    let mut rng = rng::stream(31, "acceptance/dynamics");
    let probes: Vec<ProjectivePoint> =
        (0..64).map(|_| ProjectivePoint::haar(2, &mut rng)).collect();
    let sigma = DensityMatrix::random(2, &mut rng);
    let transport = projlogic_core::dynamics::liouville_transport_check(
        &sigma,
        &pauli_z(),
        1.0,
        &probes,
    )
    .unwrap();

    report(
        "7 (dynamics)",
        deviation < 1e-8 && (8.0..=32.0).contains(&ratio) && transport < 1e-10,
        &format!(
            "flow deviation {deviation:.2e} (<1e-8), dt-halving ratio {ratio:.1} (in [8,32]), transport {transport:.2e} (<1e-10)"
        ),
    );
}

/// t-norm axioms: both built-ins pass all four axioms with zero grid
/// violations; the constructed counterexample breaks the unit law by 0.25
/// at x = 0.5.
#[test]
fn criterion_8_tnorm_axioms() {
    let t = tol();
    let mut rng = rng::stream(37, "acceptance/tnorm");
    let mut built_ins_ok = true;
    for norm in [TNorm::Lukasiewicz, TNorm::Product] {
        let axioms = tnorm_axiom_check(&norm, 101, 10_000, &mut rng, &t);
        built_ins_ok &= axioms.all_passed()
            && axioms.commutativity.violations == 0
            && axioms.monotonicity.violations == 0
            && axioms.associativity.violations == 0
            && axioms.unit.violations == 0;
    }
    let bad = TNorm::custom("squared-min", |x, y| x.min(y).powi(2));
    let axioms = tnorm_axiom_check(&bad, 101, 0, &mut rng, &t);
    let counterexample_ok = !axioms.unit.passed()
        && (axioms.unit.max_deviation - 0.25).abs() < 1e-12
        && (axioms.unit.worst.0 - 0.5).abs() < 1e-12;

    report(
        "8 (t-norm axioms)",
        built_ins_ok && counterexample_ok,
        &format!(
            "built-ins zero violations: {built_ins_ok}; counterexample unit violation {:.2} at x = {}",
            axioms.unit.max_deviation, axioms.unit.worst.0
        ),
    );
}

/// Determinism: the full verification run under a fixed seed produces
/// byte-identical reports across repeated runs and across thread counts.
#[test]
fn criterion_9_determinism() {
    let binary = env!("CARGO_BIN_EXE_projlogic");
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (tag, threads) in [("run1", "1"), ("run2", "1"), ("run3", "4")] {
        let path = dir.path().join(format!("{tag}.json"));
        let out = std::process::Command::new(binary)
            .args([
                "verify",
                "all",
                "--dim",
                "3",
                "--seed",
                "7",
                "--samples",
                "1000",
                "--threads",
                threads,
                "--report",
                path.to_str().unwrap(),
            ])
            .env("SOURCE_DATE_EPOCH", "1700000000")
            .output()
            .expect("binary runs");
        assert_eq!(
            out.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        outputs.push(std::fs::read(&path).unwrap());
    }
    let identical = outputs[0] == outputs[1] && outputs[0] == outputs[2];
    report(
        "9 (determinism)",
        identical,
        &format!(
            "three runs (two at one thread, one at four) produced {} byte-identical reports of {} bytes",
            if identical { "fully" } else { "NON-" },
            outputs[0].len()
        ),
    );
}
