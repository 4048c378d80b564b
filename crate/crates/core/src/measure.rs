//! Integration against the unitarily invariant probability measure.
//!
//! Monte-Carlo estimates use points sampled in sequence from a dedicated
//! stream; field evaluation may fan out over a thread pool, with the merge
//! kept in sample order so results are bit-identical at any thread count.
//! Exact first and second moments provide an oracle path that removes
//! Monte-Carlo noise wherever both factors are affine in p.

use crate::error::{Error, Result};
use crate::fuzzy::MembershipFunction;
use crate::linalg::trace_product;
use crate::operators::{DensityMatrix, HermitianOperator, ProjectivePoint, random_hermitian};
use crate::tol::Tolerances;
use rand::Rng;
use rayon::prelude::*;

/// Sample mean with its standard error.
#[derive(Debug, Clone, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl MonteCarloEstimate {
    /// Exact value reported through the estimate interface.
    pub fn exact(value: f64) -> Self {
        Self {
            mean: value,
            std_error: 0.0,
            n_samples: 0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.n_samples == 0
    }

    /// |mean - target| within `sigmas` standard errors (with a small absolute
    /// floor so exact-path zero variance does not reject rounding noise).
    pub fn consistent_with(&self, target: f64, sigmas: f64) -> bool {
        (self.mean - target).abs() <= sigmas * self.std_error + 1e-12
    }
}

/// Sample mean and standard error of `field` over Haar points.
pub fn mc_integrate<F, R>(field: &F, dim: usize, n_samples: usize, rng: &mut R) -> MonteCarloEstimate
where
    F: Fn(&ProjectivePoint) -> f64 + Sync + ?Sized,
    R: Rng + ?Sized,
{
    assert!(n_samples >= 100, "need at least 100 samples");
    let points: Vec<ProjectivePoint> = (0..n_samples)
        .map(|_| ProjectivePoint::haar(dim, rng))
        .collect();
    let values: Vec<f64> = points.par_iter().map(field).collect();

    let mean = values.iter().sum::<f64>() / n_samples as f64;
    let ss = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>();
    let variance = ss / (n_samples as f64 - 1.0);
    MonteCarloEstimate {
        mean,
        std_error: (variance / n_samples as f64).sqrt(),
        n_samples,
    }
}

/// Exact first moment: integral of tr(A p) dnu = tr(A)/n.
pub fn moment1_exact(a: &HermitianOperator) -> f64 {
    a.trace() / a.dim() as f64
}

/// Exact second moment:
/// integral of tr(A p) tr(B p) dnu = (tr A tr B + tr(A B)) / (n (n + 1)).
pub fn moment2_exact(a: &HermitianOperator, b: &HermitianOperator) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let n = a.dim() as f64;
    let cross = trace_product(a.matrix(), b.matrix()).re;
    Ok((a.trace() * b.trace() + cross) / (n * (n + 1.0)))
}

/// Phase-space representative of a density matrix:
/// rho_sigma(p) = n(n+1) tr(sigma p) - n.
///
/// With this constant both defining identities hold exactly:
/// integral rho_sigma dnu = 1 and integral f_A rho_sigma dnu = tr(sigma A).
/// The function is not a probability density; for pure sigma it reaches -n
/// at orthogonal points.
#[derive(Debug, Clone)]
pub struct LiouvilleDensity {
    sigma: DensityMatrix,
}

impl LiouvilleDensity {
    /// Wrap a density matrix, certifying both defining identities through the
    /// exact moment oracles (normalization, and expectation reproduction on
    /// random probe operators).
    pub fn new<R: Rng + ?Sized>(
        sigma: DensityMatrix,
        rng: &mut R,
        tol: &Tolerances,
    ) -> Result<Self> {
        let density = Self { sigma };
        let norm = density.integral_oracle();
        if (norm - 1.0).abs() > tol.oracle {
            return Err(Error::CertificationFailure {
                context: "liouville density normalization",
                deviation: (norm - 1.0).abs(),
                limit: tol.oracle,
            });
        }
        for _ in 0..10 {
            let a = random_hermitian(density.dim(), 1.0, rng);
            let lhs = density.expectation_oracle(&a)?;
            let rhs = trace_product(density.sigma.matrix(), a.matrix()).re;
            if (lhs - rhs).abs() > tol.oracle * 100.0 {
                return Err(Error::CertificationFailure {
                    context: "liouville density expectation identity",
                    deviation: (lhs - rhs).abs(),
                    limit: tol.oracle * 100.0,
                });
            }
        }
        Ok(density)
    }

    /// Wrap without running the oracle certification; for callers that
    /// already hold a valid density matrix and only need the evaluation rule.
    pub fn uncertified(sigma: DensityMatrix) -> Self {
        Self { sigma }
    }

    pub fn dim(&self) -> usize {
        self.sigma.dim()
    }

    pub fn sigma(&self) -> &DensityMatrix {
        &self.sigma
    }

    pub fn eval(&self, p: &ProjectivePoint) -> f64 {
        let n = self.dim() as f64;
        n * (n + 1.0) * trace_product(self.sigma.matrix(), p.matrix()).re - n
    }

    /// Exact integral of the density against the invariant measure.
    pub fn integral_oracle(&self) -> f64 {
        let n = self.dim() as f64;
        n * (n + 1.0) * moment1_exact(self.sigma.operator()) - n
    }

    /// Exact integral of f_A times the density: should equal tr(sigma A).
    pub fn expectation_oracle(&self, a: &HermitianOperator) -> Result<f64> {
        let n = self.dim() as f64;
        let m2 = moment2_exact(a, self.sigma.operator())?;
        Ok(n * (n + 1.0) * m2 - n * moment1_exact(a))
    }
}

/// Affine phase-space density n(n+1) tr(sigma p) + shift, for studying the
/// effect of the additive constant. `shift = -n` recovers
/// [`LiouvilleDensity::eval`].
pub fn affine_density_value(sigma: &DensityMatrix, shift: f64, p: &ProjectivePoint) -> f64 {
    let n = sigma.dim() as f64;
    n * (n + 1.0) * trace_product(sigma.matrix(), p.matrix()).re + shift
}

/// Exact integral of the affine density with an arbitrary shift.
pub fn affine_density_integral(sigma: &DensityMatrix, shift: f64) -> f64 {
    let n = sigma.dim() as f64;
    n * (n + 1.0) * moment1_exact(sigma.operator()) + shift
}

/// A density on phase space: either the exact Liouville representative of a
/// state, or an arbitrary pointwise rule (checked for normalization by MC).
pub enum PhaseDensity<'a> {
    Liouville(&'a LiouvilleDensity),
    Pointwise(&'a (dyn Fn(&ProjectivePoint) -> f64 + Sync)),
}

impl PhaseDensity<'_> {
    pub fn eval(&self, p: &ProjectivePoint) -> f64 {
        match self {
            Self::Liouville(d) => d.eval(p),
            Self::Pointwise(f) => f(p),
        }
    }
}

/// Probability of a fuzzy event: integral of mu times the density.
///
/// When the membership is operator-generated and the density is a Liouville
/// representative the value is tr(sigma T), computed exactly through the
/// moment oracle; otherwise a Monte-Carlo estimate is returned. The density
/// is required to integrate to 1 (exactly on the oracle path, within the MC
/// band otherwise).
pub fn fuzzy_event_probability<R: Rng + ?Sized>(
    mu: &MembershipFunction,
    density: &PhaseDensity<'_>,
    dim: usize,
    n_samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<MonteCarloEstimate> {
    match density {
        PhaseDensity::Liouville(liouville) => {
            let norm = liouville.integral_oracle();
            if (norm - 1.0).abs() > tol.oracle {
                return Err(Error::NonNormalizedDensity {
                    mean: norm,
                    std_error: 0.0,
                });
            }
            if let Some(t) = mu.generator() {
                let n = dim as f64;
                let m2 = moment2_exact(t, liouville.sigma().operator())?;
                let m1 = moment1_exact(t);
                let value = n * (n + 1.0) * m2 - n * m1;
                return Ok(MonteCarloEstimate::exact(value));
            }
            let est = mc_integrate(&|p| mu.eval(p) * liouville.eval(p), dim, n_samples, rng);
            Ok(est)
        }
        PhaseDensity::Pointwise(f) => {
            let norm = mc_integrate(&|p| f(p), dim, n_samples, rng);
            if !norm.consistent_with(1.0, tol.mc_sigmas) {
                return Err(Error::NonNormalizedDensity {
                    mean: norm.mean,
                    std_error: norm.std_error,
                });
            }
            Ok(mc_integrate(&|p| mu.eval(p) * f(p), dim, n_samples, rng))
        }
    }
}

/// Defect of the reproducing identity at a point:
/// | integral of mu rho_{p0} dnu - mu(p0) |.
#[derive(Debug, Clone)]
pub struct ReproducingDefect {
    pub defect: f64,
    /// Standard error of the integral estimate; `None` on the oracle path.
    pub std_error: Option<f64>,
}

/// Check whether the pure-state density at p0 reproduces mu(p0).
///
/// Operator-generated memberships go through the exact oracle (the defect is
/// rounding-level when mu is observable-type); other fields are integrated by
/// Monte Carlo.
pub fn dirac_reproducing_check<R: Rng + ?Sized>(
    mu: &MembershipFunction,
    p0: &ProjectivePoint,
    n_samples: usize,
    rng: &mut R,
) -> ReproducingDefect {
    let target = mu.eval(p0);
    let density = LiouvilleDensity {
        sigma: DensityMatrix::from_point(p0),
    };
    if let Some(t) = mu.generator() {
        let integral = density
            .expectation_oracle(t)
            .expect("same dimension by construction");
        return ReproducingDefect {
            defect: (integral - target).abs(),
            std_error: None,
        };
    }
    let est = mc_integrate(&|p| mu.eval(p) * density.eval(p), p0.dim(), n_samples, rng);
    ReproducingDefect {
        defect: (est.mean - target).abs(),
        std_error: Some(est.std_error),
    }
}

/// Exact reproducing integral for an arbitrary field is not available; this
/// oracle gives it for a pure state against a field tabulated by quadrature
/// on the Bloch circle z in [-1, 1] (dim 2 only, axially symmetric fields).
/// Used to freeze expected defects for the non-observable corpus.
pub fn bloch_axial_integral<F>(field: &F, steps: usize) -> f64
where
    F: Fn(f64) -> f64,
{
    // Simpson's rule over z in [-1, 1] with uniform weight dz/2.
    assert!(steps >= 2 && steps.is_multiple_of(2));
    let h = 2.0 / steps as f64;
    let mut acc = 0.0;
    for k in 0..=steps {
        let z = -1.0 + k as f64 * h;
        let w = if k == 0 || k == steps {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc += w * field(z);
    }
    acc * h / 3.0 / 2.0
}
