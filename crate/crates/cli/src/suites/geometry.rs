//! Geometry suite: symplectic form, metric, complex structure, Hamiltonian
//! fields, Poisson brackets, and the observable-type decision procedures.

use crate::config::SuiteConfig;
use crate::report::CheckRecord;
use crate::suites::{extra_operators, label};
use projlogic_core::geometry::{
    complex_structure, directional_derivative_fd, frame_function_deviation, fubini_study_metric,
    hamiltonian_vector_field, observable_fit, poisson_bracket, poisson_bracket_fd, random_tangent,
    symplectic_form, ObservableFunction, TangentVector,
};
use projlogic_core::linalg::cr;
use projlogic_core::operators::{random_hermitian, ProjectivePoint};
use projlogic_core::{rng, Result};

pub fn run(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = &cfg.tol;
    let dim = cfg.dim;
    let n_probes = 1000usize;
    let mut records = Vec::new();

    // Gauge invariance of omega and g under generator shifts commuting with
    // the base point.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "gauge"));
        let mut omega_dev = 0.0_f64;
        let mut metric_dev = 0.0_f64;
        for _ in 0..n_probes {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let a = random_hermitian(dim, 1.0, &mut rng);
            let b = random_hermitian(dim, 1.0, &mut rng);
            let u = TangentVector::from_generator(&p, &a)?;
            let v = TangentVector::from_generator(&p, &b)?;
            let shift = projlogic_core::geometry::commuting_with_point(&p, &mut rng);
            let shifted = TangentVector::from_generator(&p, &b.add(&shift)?)?;
            omega_dev = omega_dev.max(
                (symplectic_form(&u, &v, tol)? - symplectic_form(&u, &shifted, tol)?).abs(),
            );
            metric_dev = metric_dev.max(
                (fubini_study_metric(&u, &v, tol)? - fubini_study_metric(&u, &shifted, tol)?)
                    .abs(),
            );
        }
        records.push(CheckRecord::numeric(
            "omega_gauge_invariance",
            "symplectic form",
            n_probes as u64,
            omega_dev,
            tol.gauge,
            "generator shifted by an operator commuting with the base point",
        ));
        records.push(CheckRecord::numeric(
            "metric_gauge_invariance",
            "Fubini-Study metric",
            n_probes as u64,
            metric_dev,
            tol.gauge,
            "generator shifted by an operator commuting with the base point",
        ));
    }

    // Antisymmetry, symmetry, bilinearity.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "bilinear"));
        let mut antisym = 0.0_f64;
        let mut sym = 0.0_f64;
        let mut bilinear = 0.0_f64;
        for _ in 0..200 {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let u = random_tangent(&p, &mut rng);
            let v = random_tangent(&p, &mut rng);
            let w = random_tangent(&p, &mut rng);
            antisym = antisym
                .max((symplectic_form(&u, &v, tol)? + symplectic_form(&v, &u, tol)?).abs());
            sym = sym
                .max((fubini_study_metric(&u, &v, tol)? - fubini_study_metric(&v, &u, tol)?).abs());
            let alpha: f64 = 1.5;
            let combo = TangentVector::from_value(
                p.clone(),
                v.value().map(|z| z * cr(alpha)) + w.value(),
            );
            bilinear = bilinear.max(
                (symplectic_form(&u, &combo, tol)?
                    - alpha * symplectic_form(&u, &v, tol)?
                    - symplectic_form(&u, &w, tol)?)
                .abs(),
            );
            bilinear = bilinear.max(
                (fubini_study_metric(&u, &combo, tol)?
                    - alpha * fubini_study_metric(&u, &v, tol)?
                    - fubini_study_metric(&u, &w, tol)?)
                .abs(),
            );
        }
        records.push(CheckRecord::numeric(
            "omega_antisymmetry",
            "symplectic form",
            200,
            antisym,
            tol.probe,
            "",
        ));
        records.push(CheckRecord::numeric(
            "metric_symmetry",
            "Fubini-Study metric",
            200,
            sym,
            tol.probe,
            "",
        ));
        records.push(CheckRecord::numeric(
            "bilinearity",
            "symplectic form",
            200,
            bilinear,
            tol.probe,
            "random real linear combinations in the second slot",
        ));
    }

    // Complex structure: involution, isometry, compatibility with omega.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "complex-structure"));
        let mut involution = 0.0_f64;
        let mut isometry = 0.0_f64;
        let mut kahler = 0.0_f64;
        for _ in 0..n_probes {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let u = random_tangent(&p, &mut rng);
            let v = random_tangent(&p, &mut rng);
            let jjv = complex_structure(&complex_structure(&v));
            involution = involution.max(
                projlogic_core::linalg::max_entry_diff(
                    jjv.value(),
                    &v.value().map(|z| -z),
                ),
            );
            isometry = isometry.max(
                (fubini_study_metric(&complex_structure(&u), &complex_structure(&v), tol)?
                    - fubini_study_metric(&u, &v, tol)?)
                .abs(),
            );
            kahler = kahler.max(
                (fubini_study_metric(&u, &v, tol)?
                    - symplectic_form(&u, &complex_structure(&v), tol)?)
                .abs(),
            );
        }
        records.push(CheckRecord::numeric(
            "complex_structure_involution",
            "complex structure",
            n_probes as u64,
            involution,
            tol.jj,
            "j applied twice negates the vector",
        ));
        records.push(CheckRecord::numeric(
            "complex_structure_isometry",
            "complex structure",
            n_probes as u64,
            isometry,
            tol.probe,
            "",
        ));
        records.push(CheckRecord::numeric(
            "kahler_compatibility",
            "Fubini-Study metric",
            n_probes as u64,
            kahler,
            tol.kahler,
            "g(u, v) = omega(u, j v)",
        ));
    }

    // Tangency invariants of random vectors: Hermitian value, zero trace,
    // v = vp + pv, pvp = 0, and canonicalization as a fixed point.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "tangency"));
        let mut worst = 0.0_f64;
        for _ in 0..n_probes {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let v = random_tangent(&p, &mut rng);
            worst = worst.max(v.tangency_defect());
            let again = TangentVector::from_generator(&p, v.generator())?;
            worst = worst.max(projlogic_core::linalg::max_entry_diff(
                again.value(),
                v.value(),
            ));
        }
        records.push(CheckRecord::numeric(
            "tangency_invariants",
            "complex structure",
            n_probes as u64,
            worst,
            tol.tangent,
            "value Hermitian and traceless, split by the base point, canonical generator stable",
        ));
    }

    // Positivity of the metric.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "positivity"));
        let mut worst = 0.0_f64;
        for _ in 0..n_probes {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let u = random_tangent(&p, &mut rng);
            let g = fubini_study_metric(&u, &u, tol)?;
            worst = worst.max((-g).max(0.0));
        }
        records.push(CheckRecord::numeric(
            "metric_positivity",
            "Fubini-Study metric",
            n_probes as u64,
            worst,
            tol.psd,
            "g(u, u) >= 0",
        ));
    }

    // Defining identity of the Hamiltonian field, on top of the internal
    // 20-probe certification.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "hamiltonian"));
        let mut worst = 0.0_f64;
        for _ in 0..n_probes {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let f = ObservableFunction::new(random_hermitian(dim, 1.0, &mut rng));
            let field = hamiltonian_vector_field(&f, &p, &mut rng, tol)?;
            let probe = random_tangent(&p, &mut rng);
            let lhs = symplectic_form(&field, &probe, tol)?;
            let rhs = f.directional_derivative(&probe);
            worst = worst.max((lhs - rhs).abs());
        }
        records.push(CheckRecord::numeric(
            "hamiltonian_field_identity",
            "Hamiltonian vector field",
            n_probes as u64,
            worst,
            tol.ham_field,
            "omega(X_f, Y) = df(Y) for random probe directions",
        ));
    }

    // Poisson bracket: algebraic formula vs the symplectic pairing, plus the
    // Leibniz rule probed by finite differences.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "poisson"));
        let extras = extra_operators(cfg)?;
        let mut xcheck = 0.0_f64;
        for k in 0..200 {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let a = if k < extras.len() {
                extras[k].clone()
            } else {
                random_hermitian(dim, 1.0, &mut rng)
            };
            let b = random_hermitian(dim, 1.0, &mut rng);
            let algebraic = poisson_bracket(&a, &b, &p, tol)?;
            let xa = TangentVector::from_generator(&p, &a)?;
            let xb = TangentVector::from_generator(&p, &b)?;
            xcheck = xcheck.max((algebraic - symplectic_form(&xa, &xb, tol)?).abs());
        }
        records.push(CheckRecord::numeric(
            "poisson_bracket_cross_check",
            "Poisson bracket",
            200,
            xcheck,
            tol.xcheck,
            "-i tr([A,B]p) against omega(X_A, X_B)",
        ));

        let mut leibniz = 0.0_f64;
        for _ in 0..10 {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let a = random_hermitian(dim, 1.0, &mut rng);
            let b = random_hermitian(dim, 1.0, &mut rng);
            let c = random_hermitian(dim, 1.0, &mut rng);
            let g = |q: &ProjectivePoint| b.expectation(q);
            let h = |q: &ProjectivePoint| c.expectation(q);
            let gh = |q: &ProjectivePoint| g(q) * h(q);
            let lhs = poisson_bracket_fd(&a, &gh, &p, tol.fd_step);
            let rhs = g(&p) * poisson_bracket(&a, &c, &p, tol)?
                + h(&p) * poisson_bracket(&a, &b, &p, tol)?;
            leibniz = leibniz.max((lhs - rhs).abs());
        }
        records.push(CheckRecord::numeric(
            "poisson_leibniz_rule",
            "Poisson bracket",
            10,
            leibniz,
            tol.fd_agree,
            "bracket with a pointwise product, probed by central differences",
        ));
    }

    // Analytic directional derivative vs central finite differences.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "fd"));
        let mut worst = 0.0_f64;
        for _ in 0..100 {
            let p = ProjectivePoint::haar(dim, &mut rng);
            let f = ObservableFunction::new(random_hermitian(dim, 1.0, &mut rng));
            let v = random_tangent(&p, &mut rng);
            let analytic = f.directional_derivative(&v);
            let numeric = directional_derivative_fd(&|q| f.eval(q), &v, tol.fd_step);
            worst = worst.max((analytic - numeric).abs());
        }
        records.push(CheckRecord::numeric(
            "directional_derivative_fd",
            "observable classification",
            100,
            worst,
            tol.fd_agree,
            "rank-1 re-projected central differences",
        ));
    }

    // Observable classification: the fit recovers operators, rejects
    // non-affine fields, and agrees with the frame-sum criterion.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "fit"));
        let n_samples = dim * dim + 32;
        let target = random_hermitian(dim, 1.0, &mut rng);
        let fit = observable_fit(&|p| target.expectation(p), dim, n_samples, &mut rng, tol)?;
        let recovery = projlogic_core::linalg::max_entry_diff(
            fit.operator.matrix(),
            target.matrix(),
        );
        records.push(CheckRecord::numeric(
            "observable_fit_recovery",
            "observable classification",
            n_samples as u64,
            recovery.max(fit.residual),
            1e-8,
            format!("residual {:.3e}", fit.residual),
        ));

        let quad_op = random_hermitian(dim, 1.0, &mut rng);
        let fit_quad = observable_fit(
            &|p| quad_op.expectation(p).powi(2),
            dim,
            n_samples,
            &mut rng,
            tol,
        )?;
        records.push(CheckRecord::witness(
            "observable_fit_rejects_nonaffine",
            "observable classification",
            n_samples as u64,
            fit_quad.residual > 0.01,
            format!("quadratic field residual {:.6}", fit_quad.residual),
        ));

        let fit_const = observable_fit(&|_| 0.5, dim, n_samples, &mut rng, tol)?;
        records.push(CheckRecord::numeric(
            "observable_fit_constant",
            "observable classification",
            n_samples as u64,
            fit_const.residual,
            tol.obs_fit,
            "constants are observable-type",
        ));

        let mut disagreements = 0usize;
        for k in 0..20 {
            let a = random_hermitian(dim, 1.0, &mut rng);
            let affine = k < 10;
            let field = move |p: &ProjectivePoint| {
                let v = a.expectation(p);
                if affine {
                    v
                } else {
                    v * v + 0.1 * v
                }
            };
            let fit = observable_fit(&field, dim, n_samples, &mut rng, tol)?;
            let dev = frame_function_deviation(&field, dim, 8, &mut rng);
            let by_fit = fit.is_observable_type(tol);
            let by_frame = dev < tol.frame_dev;
            if by_fit != by_frame || by_fit != affine {
                disagreements += 1;
            }
        }
        records.push(CheckRecord::witness(
            "classifier_agreement",
            "observable classification",
            20,
            disagreements == 0,
            format!("{disagreements} disagreements between fit and frame criteria"),
        ));
    }

    // Frame-sum constancy for observable fields.
    {
        let mut rng = rng::stream(cfg.seed, &label("geometry", "frame"));
        let mut worst = 0.0_f64;
        for _ in 0..10 {
            let target = random_hermitian(dim, 1.0, &mut rng);
            worst = worst.max(frame_function_deviation(
                &|p| target.expectation(p),
                dim,
                12,
                &mut rng,
            ));
        }
        records.push(CheckRecord::numeric(
            "frame_sum_constancy_observable",
            "frame condition",
            10,
            worst,
            tol.probe,
            "basis sums of tr(T p) equal tr(T) for every orthonormal basis",
        ));

        let quad_op = random_hermitian(dim, 1.0, &mut rng);
        let dev = frame_function_deviation(
            &|p| quad_op.expectation(p).powi(2),
            dim,
            12,
            &mut rng,
        );
        records.push(CheckRecord::witness(
            "frame_sum_varies_for_nonaffine",
            "frame condition",
            12,
            dev > 0.05,
            format!("quadratic field basis-sum deviation {dev:.6}"),
        ));
    }

    Ok(records)
}
