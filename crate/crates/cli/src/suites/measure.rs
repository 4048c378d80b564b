//! Measure suite: Monte-Carlo moments against the exact oracles, the
//! phase-space density identities, and the reproducing point measures.

use crate::config::SuiteConfig;
use crate::report::CheckRecord;
use crate::suites::{extra_operators, label};
use projlogic_core::linalg::trace_product;
use projlogic_core::measure::{
    affine_density_integral, affine_density_value, dirac_reproducing_check, fuzzy_event_probability,
    mc_integrate, moment1_exact, moment2_exact, LiouvilleDensity, PhaseDensity,
};
use projlogic_core::fuzzy::MembershipFunction;
use projlogic_core::operators::{
    haar_unitary, random_hermitian, random_projector, DensityMatrix, HermitianOperator,
    OrthonormalBasis, ProjectivePoint,
};
use projlogic_core::{rng, Result};

pub fn run(cfg: &SuiteConfig) -> Result<Vec<CheckRecord>> {
    let tol = &cfg.tol;
    let dim = cfg.dim;
    let n = dim as f64;
    let n_samples = cfg.n_samples;
    let mut records = Vec::new();

    // Constant fields integrate exactly.
    {
        let mut rng = rng::stream(cfg.seed, &label("measure", "constant"));
        let est = mc_integrate(&|_| 1.0, dim, n_samples.max(100), &mut rng);
        records.push(CheckRecord::numeric(
            "mc_constant_exact",
            "invariant measure",
            n_samples as u64,
            (est.mean - 1.0).abs() + est.std_error,
            0.0,
            "mean exactly 1 with zero spread",
        ));
    }

    // First and second moments against the exact oracles, in units of the
    // Monte-Carlo standard error.
    {
        let extras = extra_operators(cfg)?;
        let mut op_rng = rng::stream(cfg.seed, &label("measure", "moment-ops"));
        let mut worst_m1 = 0.0_f64;
        let mut worst_m2 = 0.0_f64;
        for k in 0..50 {
            let a = if k < extras.len() {
                extras[k].clone()
            } else {
                random_hermitian(dim, 1.0, &mut op_rng)
            };
            let b = random_hermitian(dim, 1.0, &mut op_rng);
            let m1 = mc_integrate(
                &|p| a.expectation(p),
                dim,
                n_samples,
                &mut rng::stream(cfg.seed, &label("measure", &format!("m1-{k}"))),
            );
            worst_m1 = worst_m1
                .max((m1.mean - moment1_exact(&a)).abs() / (m1.std_error + 1e-15));
            let m2 = mc_integrate(
                &|p| a.expectation(p) * b.expectation(p),
                dim,
                n_samples,
                &mut rng::stream(cfg.seed, &label("measure", &format!("m2-{k}"))),
            );
            worst_m2 = worst_m2
                .max((m2.mean - moment2_exact(&a, &b)?).abs() / (m2.std_error + 1e-15));
        }
        records.push(CheckRecord::numeric(
            "mc_moment1_vs_oracle",
            "moment oracle",
            (50 * n_samples) as u64,
            worst_m1,
            tol.mc_sigmas,
            "deviation in standard errors against tr(A)/n",
        ));
        records.push(CheckRecord::numeric(
            "mc_moment2_vs_oracle",
            "moment oracle",
            (50 * n_samples) as u64,
            worst_m2,
            tol.mc_sigmas,
            "deviation in standard errors against (trA trB + tr AB)/(n(n+1))",
        ));
    }

    // Unitary invariance of the sampler.
    {
        let mut rng_u = rng::stream(cfg.seed, &label("measure", "invariance-u"));
        let u = haar_unitary(dim, &mut rng_u);
        let a = random_hermitian(dim, 1.0, &mut rng_u);
        let field = move |p: &ProjectivePoint| {
            let v = a.expectation(p);
            v * v + 0.5 * v
        };
        let direct = mc_integrate(
            &field,
            dim,
            n_samples,
            &mut rng::stream(cfg.seed, &label("measure", "invariance-a")),
        );
        let rotated = mc_integrate(
            &|p: &ProjectivePoint| field(&p.conjugate_by(&u)),
            dim,
            n_samples,
            &mut rng::stream(cfg.seed, &label("measure", "invariance-b")),
        );
        let joint = (direct.std_error.powi(2) + rotated.std_error.powi(2)).sqrt();
        records.push(CheckRecord::numeric(
            "sampling_unitary_invariance",
            "invariant measure",
            (2 * n_samples) as u64,
            (direct.mean - rotated.mean).abs() / (joint + 1e-15),
            tol.mc_sigmas,
            "estimates at rotated points agree within joint standard errors",
        ));
    }

    // Density identities through the exact oracles.
    {
        let mut rng = rng::stream(cfg.seed, &label("measure", "density"));
        let mut norm_dev = 0.0_f64;
        let mut expect_dev = 0.0_f64;
        for _ in 0..10 {
            let sigma = DensityMatrix::random(dim, &mut rng);
            let density = LiouvilleDensity::new(sigma.clone(), &mut rng, tol)?;
            norm_dev = norm_dev.max((density.integral_oracle() - 1.0).abs());
            for _ in 0..10 {
                let a = random_hermitian(dim, 1.0, &mut rng);
                let lhs = density.expectation_oracle(&a)?;
                let rhs = trace_product(sigma.matrix(), a.matrix()).re;
                expect_dev = expect_dev.max((lhs - rhs).abs());
            }
        }
        records.push(CheckRecord::numeric(
            "density_normalization",
            "phase-space density",
            10,
            norm_dev,
            tol.oracle,
            "integral of the density is 1, oracle path",
        ));
        records.push(CheckRecord::numeric(
            "density_expectation_identity",
            "phase-space density",
            100,
            expect_dev,
            tol.oracle * 100.0,
            "integral of f_A against the density equals tr(sigma A)",
        ));

        // Uniform density for the maximally mixed state.
        let uniform = LiouvilleDensity::new(DensityMatrix::maximally_mixed(dim), &mut rng, tol)?;
        let mut uniform_dev = 0.0_f64;
        for _ in 0..100 {
            let p = ProjectivePoint::haar(dim, &mut rng);
            uniform_dev = uniform_dev.max((uniform.eval(&p) - 1.0).abs());
        }
        records.push(CheckRecord::numeric(
            "density_uniform_for_mixed",
            "phase-space density",
            100,
            uniform_dev,
            tol.oracle * 10.0,
            "",
        ));

        // Pure-state density: n^2 at itself, -n at orthogonal points.
        let p0 = ProjectivePoint::standard(dim, 0);
        let pure = LiouvilleDensity::new(DensityMatrix::from_point(&p0), &mut rng, tol)?;
        let orth = ProjectivePoint::standard(dim, 1);
        let extremes = (pure.eval(&p0) - n * n).abs().max((pure.eval(&orth) + n).abs());
        records.push(CheckRecord::numeric(
            "density_pure_state_extremes",
            "phase-space density",
            2,
            extremes,
            tol.oracle * 10.0,
            format!("value {} at itself, {} at an orthogonal point", n * n, -n),
        ));
        records.push(CheckRecord::witness(
            "density_goes_negative_for_pure",
            "phase-space density",
            1,
            pure.eval(&orth) < 0.0,
            "the density is not a probability density",
        ));
    }

    // The additive constant: shift -n satisfies the normalization, shift -1
    // makes basis sums n^2. Both variants measured and reported.
    {
        let mut rng = rng::stream(cfg.seed, &label("measure", "variants"));
        let sigma = DensityMatrix::random(dim, &mut rng);
        let int_minus_n = affine_density_integral(&sigma, -n);
        let int_minus_1 = affine_density_integral(&sigma, -1.0);
        let mut frame_minus_n = 0.0_f64;
        let mut frame_minus_1 = 0.0_f64;
        for _ in 0..10 {
            let basis = OrthonormalBasis::haar(dim, &mut rng);
            let p = ProjectivePoint::haar(dim, &mut rng);
            let sum_n: f64 = basis
                .points()
                .iter()
                .map(|pi| affine_density_value(&DensityMatrix::from_point(pi), -n, &p))
                .sum();
            let sum_1: f64 = basis
                .points()
                .iter()
                .map(|pi| affine_density_value(&DensityMatrix::from_point(pi), -1.0, &p))
                .sum();
            frame_minus_n = frame_minus_n.max((sum_n - n).abs());
            frame_minus_1 = frame_minus_1.max((sum_1 - n * n).abs());
        }
        let max_error = (int_minus_n - 1.0)
            .abs()
            .max((int_minus_1 - n).abs())
            .max(frame_minus_n)
            .max(frame_minus_1);
        records.push(CheckRecord::numeric(
            "density_constant_variants",
            "phase-space density",
            10,
            max_error,
            tol.probe,
            format!(
                "shift -n: integral {int_minus_n:.12}, basis sum {n}; shift -1: integral {int_minus_1:.12}, basis sum {}",
                n * n
            ),
        ));
    }

    // Reproducing point measures: exact for operator-generated memberships,
    // failing by a fixed margin for the non-affine corpus.
    {
        let mut rng = rng::stream(cfg.seed, &label("measure", "reproducing"));
        let mut obs_defect = 0.0_f64;
        for _ in 0..10 {
            let effect = {
                let proj = random_projector(dim, 1, &mut rng)?;
                HermitianOperator::new(
                    proj.matrix().map(|z| z * projlogic_core::linalg::cr(0.7)),
                    tol,
                )?
            };
            let mu = MembershipFunction::from_operator(effect, tol)?;
            let p0 = ProjectivePoint::haar(dim, &mut rng);
            let result = dirac_reproducing_check(&mu, &p0, n_samples, &mut rng);
            obs_defect = obs_defect.max(result.defect);
        }
        records.push(CheckRecord::numeric(
            "reproducing_observable_membership",
            "reproducing point measure",
            10,
            obs_defect,
            tol.probe,
            "oracle path for operator-generated memberships",
        ));

        // Non-affine corpus mu = x^2, x^4, (1-x)^2 of x = tr(P p); the
        // defects at the point of P stay above 0.05 at every dimension.
        let proj = random_projector(dim, 1, &mut rng)?;
        let p0 = proj.operator().eigenpoints().pop().expect("rank-1 top eigenpoint");
        let base = proj.operator().clone();
        type GradeMap = Box<dyn Fn(f64) -> f64 + Send + Sync>;
        let powers: Vec<(String, GradeMap)> = vec![
            ("x^2".into(), Box::new(|x: f64| x * x)),
            ("x^4".into(), Box::new(|x: f64| x.powi(4))),
            ("(1-x)^2".into(), Box::new(|x: f64| (1.0 - x) * (1.0 - x))),
        ];
        let mut min_defect = f64::INFINITY;
        let mut details = Vec::new();
        for (name, f) in powers {
            let base = base.clone();
            let mu = MembershipFunction::from_fn(dim, move |p| f(base.expectation(p)));
            let result = dirac_reproducing_check(&mu, &p0, n_samples, &mut rng);
            details.push(format!("{name}: defect {:.4}", result.defect));
            min_defect = min_defect.min(result.defect);
        }
        records.push(CheckRecord::witness(
            "reproducing_fails_for_nonaffine",
            "reproducing point measure",
            3,
            min_defect > 0.05,
            details.join("; "),
        ));
    }

    // Fuzzy event probabilities: exact path equals the trace formula and
    // matches brute-force Monte Carlo.
    {
        let mut rng = rng::stream(cfg.seed, &label("measure", "event"));
        let sigma = DensityMatrix::random(dim, &mut rng);
        let density = LiouvilleDensity::new(sigma.clone(), &mut rng, tol)?;
        let proj = random_projector(dim, 1 + dim / 2, &mut rng)?;
        let mu = MembershipFunction::from_operator(proj.operator().clone(), tol)?;

        let exact = fuzzy_event_probability(
            &mu,
            &PhaseDensity::Liouville(&density),
            dim,
            n_samples,
            &mut rng,
            tol,
        )?;
        let trace_value = trace_product(sigma.matrix(), proj.matrix()).re;
        records.push(CheckRecord::numeric(
            "fuzzy_event_exact_path",
            "fuzzy event probability",
            1,
            (exact.mean - trace_value).abs(),
            tol.oracle * 10.0,
            "operator membership against a density state gives tr(sigma T)",
        ));

        let brute = mc_integrate(
            &|p| mu.eval(p) * density.eval(p),
            dim,
            n_samples,
            &mut rng::stream(cfg.seed, &label("measure", "event-brute")),
        );
        records.push(CheckRecord::numeric(
            "fuzzy_event_exact_vs_mc",
            "fuzzy event probability",
            n_samples as u64,
            (brute.mean - exact.mean).abs() / (brute.std_error + 1e-15),
            tol.mc_sigmas,
            "",
        ));

        let one = MembershipFunction::from_operator(HermitianOperator::identity(dim), tol)?;
        let certain = fuzzy_event_probability(
            &one,
            &PhaseDensity::Liouville(&density),
            dim,
            n_samples,
            &mut rng,
            tol,
        )?;
        records.push(CheckRecord::numeric(
            "fuzzy_event_certain",
            "fuzzy event probability",
            1,
            (certain.mean - 1.0).abs(),
            tol.oracle * 10.0,
            "",
        ));
    }

    Ok(records)
}
