//! Kahler geometry of the projective space.
//!
//! Tangent vectors at a point p are matrices v = -i[A, p] for Hermitian A.
//! The symplectic form, the Fubini-Study metric and the complex structure
//! j(v) = i[v, p] are all evaluated through generators. The generator of a
//! tangent vector is gauge: shifting it by anything commuting with p leaves
//! the vector unchanged, so every vector is normalized to the canonical
//! generator A_v = i[v, p].

use crate::error::{Error, Result};
use crate::linalg::{self, commutator, cr, max_abs_entry, CMatrix, CVector, C64, I_C};
use crate::operators::{
    complex_gaussian_vector, random_hermitian, HermitianOperator, OrthonormalBasis,
    ProjectivePoint,
};
use crate::tol::Tolerances;
use rand::Rng;

/// Tangent vector at a projective point, stored with its canonical generator.
#[derive(Debug, Clone)]
pub struct TangentVector {
    base: ProjectivePoint,
    generator: HermitianOperator,
    value: CMatrix,
}

impl TangentVector {
    /// v = -i[A, p], with the generator replaced by the canonical i[v, p].
    pub fn from_generator(p: &ProjectivePoint, a: &HermitianOperator) -> Result<Self> {
        if p.dim() != a.dim() {
            return Err(Error::DimensionMismatch {
                left: p.dim(),
                right: a.dim(),
            });
        }
        let value = commutator(a.matrix(), p.matrix()).map(|z| z * (-I_C));
        Ok(Self::from_value(p.clone(), value))
    }

    /// Wrap a raw value matrix (e.g. a linear combination of tangent
    /// values), computing the canonical generator. Validity is checkable
    /// through [`Self::tangency_defect`].
    pub fn from_value(base: ProjectivePoint, value: CMatrix) -> Self {
        let canonical = commutator(&value, base.matrix()).map(|z| z * I_C);
        Self {
            base,
            generator: HermitianOperator::from_parts(canonical),
            value,
        }
    }

    pub fn zero(p: &ProjectivePoint) -> Self {
        let dim = p.dim();
        Self {
            base: p.clone(),
            generator: HermitianOperator::zero(dim),
            value: CMatrix::zeros(dim, dim),
        }
    }

    pub fn base(&self) -> &ProjectivePoint {
        &self.base
    }

    pub fn generator(&self) -> &HermitianOperator {
        &self.generator
    }

    pub fn value(&self) -> &CMatrix {
        &self.value
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            base: self.base.clone(),
            generator: self.generator.scale(factor),
            value: self.value.map(|z| z * cr(factor)),
        }
    }

    /// Max residual over the tangency conditions: Hermiticity and zero trace
    /// of the value, v = vp + pv, and pvp = 0.
    pub fn tangency_defect(&self) -> f64 {
        let p = self.base.matrix();
        let v = &self.value;
        let herm = linalg::hermiticity_defect(v);
        let trace = v.trace().norm();
        let split = max_abs_entry(&(v - (v * p + p * v)));
        let pinch = max_abs_entry(&(p * v * p));
        herm.max(trace).max(split).max(pinch)
    }

    fn check_same_base(&self, other: &Self) -> Result<()> {
        if linalg::max_entry_diff(self.base.matrix(), other.base.matrix()) > 1e-12 {
            return Err(Error::BasePointMismatch);
        }
        Ok(())
    }
}

/// Real function p -> tr(A p) attached to a Hermitian operator.
#[derive(Debug, Clone)]
pub struct ObservableFunction {
    op: HermitianOperator,
}

impl ObservableFunction {
    pub fn new(op: HermitianOperator) -> Self {
        Self { op }
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn eval(&self, p: &ProjectivePoint) -> f64 {
        self.op.expectation(p)
    }

    /// Analytic directional derivative tr(A v) along a tangent vector.
    pub fn directional_derivative(&self, v: &TangentVector) -> f64 {
        linalg::trace_product(self.op.matrix(), v.value()).re
    }
}

/// Symplectic form: omega_p(u, v) = -i tr([A_u, A_v] p).
///
/// The computed trace is real up to rounding; the imaginary residue is
/// asserted below `tol.herm_value` and discarded.
pub fn symplectic_form(u: &TangentVector, v: &TangentVector, tol: &Tolerances) -> Result<f64> {
    u.check_same_base(v)?;
    let comm = commutator(u.generator().matrix(), v.generator().matrix());
    let t = linalg::trace_product(&comm, u.base().matrix());
    let w = -I_C * t;
    if w.im.abs() > tol.herm_value {
        return Err(Error::CertificationFailure {
            context: "symplectic form imaginary residue",
            deviation: w.im.abs(),
            limit: tol.herm_value,
        });
    }
    Ok(w.re)
}

/// Fubini-Study metric: g_p(u, v) = -tr(([A_u,p][A_v,p] + [A_v,p][A_u,p]) p).
pub fn fubini_study_metric(u: &TangentVector, v: &TangentVector, tol: &Tolerances) -> Result<f64> {
    u.check_same_base(v)?;
    let p = u.base().matrix();
    let cu = commutator(u.generator().matrix(), p);
    let cv = commutator(v.generator().matrix(), p);
    let sym = &cu * &cv + &cv * &cu;
    let t = linalg::trace_product(&sym, p);
    let g = -t;
    if g.im.abs() > tol.herm_value {
        return Err(Error::CertificationFailure {
            context: "metric imaginary residue",
            deviation: g.im.abs(),
            limit: tol.herm_value,
        });
    }
    Ok(g.re)
}

/// Complex structure j(v) = i[v, p] at the same base point.
pub fn complex_structure(v: &TangentVector) -> TangentVector {
    let value = commutator(v.value(), v.base().matrix()).map(|z| z * I_C);
    TangentVector::from_value(v.base().clone(), value)
}

/// Hamiltonian vector field of f at p, certified against the defining
/// identity omega(X_f, Y) = df(Y) on random probe directions.
pub fn hamiltonian_vector_field<R: Rng + ?Sized>(
    f: &ObservableFunction,
    p: &ProjectivePoint,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<TangentVector> {
    if f.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: p.dim(),
        });
    }
    let field = TangentVector::from_generator(p, f.operator())?;
    for _ in 0..20 {
        let probe_gen = random_hermitian(p.dim(), 1.0, rng);
        let probe = TangentVector::from_generator(p, &probe_gen)?;
        let lhs = symplectic_form(&field, &probe, tol)?;
        let rhs = f.directional_derivative(&probe);
        let deviation = (lhs - rhs).abs();
        if deviation > tol.ham_field {
            return Err(Error::CertificationFailure {
                context: "hamiltonian field defining identity",
                deviation,
                limit: tol.ham_field,
            });
        }
    }
    Ok(field)
}

/// Poisson bracket of two observable functions: -i tr([A, B] p),
/// cross-checked against omega(X_f, X_h).
pub fn poisson_bracket(
    a: &HermitianOperator,
    b: &HermitianOperator,
    p: &ProjectivePoint,
    tol: &Tolerances,
) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    if a.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: p.dim(),
        });
    }
    let algebraic =
        (-I_C * linalg::trace_product(&commutator(a.matrix(), b.matrix()), p.matrix())).re;
    let xa = TangentVector::from_generator(p, a)?;
    let xb = TangentVector::from_generator(p, b)?;
    let geometric = symplectic_form(&xa, &xb, tol)?;
    let deviation = (algebraic - geometric).abs();
    if deviation > tol.xcheck {
        return Err(Error::CertificationFailure {
            context: "poisson bracket vs symplectic form",
            deviation,
            limit: tol.xcheck,
        });
    }
    Ok(algebraic)
}

/// Orthonormal (Frobenius) basis of the real vector space of Hermitian
/// matrices: diagonal units, then real and imaginary off-diagonal pairs.
pub fn hermitian_basis(dim: usize) -> Vec<CMatrix> {
    let mut basis = Vec::with_capacity(dim * dim);
    for i in 0..dim {
        let mut m = CMatrix::zeros(dim, dim);
        m[(i, i)] = cr(1.0);
        basis.push(m);
    }
    let inv_sqrt2 = cr(std::f64::consts::FRAC_1_SQRT_2);
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut re = CMatrix::zeros(dim, dim);
            re[(i, j)] = inv_sqrt2;
            re[(j, i)] = inv_sqrt2;
            basis.push(re);
            let mut im = CMatrix::zeros(dim, dim);
            im[(i, j)] = I_C * inv_sqrt2;
            im[(j, i)] = -I_C * inv_sqrt2;
            basis.push(im);
        }
    }
    basis
}

/// Result of the least-squares fit of a field by tr(T p).
#[derive(Debug, Clone)]
pub struct ObservableFit {
    pub operator: HermitianOperator,
    /// Root-mean-square misfit over the sample.
    pub residual: f64,
}

impl ObservableFit {
    pub fn is_observable_type(&self, tol: &Tolerances) -> bool {
        self.residual < tol.obs_fit
    }
}

/// Fit tr(T p_k) to mu(p_k) over Haar samples by linear least squares in the
/// n^2 real Hermitian parameters.
pub fn observable_fit<F, R>(
    field: &F,
    dim: usize,
    n_samples: usize,
    rng: &mut R,
    tol: &Tolerances,
) -> Result<ObservableFit>
where
    F: Fn(&ProjectivePoint) -> f64 + ?Sized,
    R: Rng + ?Sized,
{
    let n_params = dim * dim;
    assert!(
        n_samples >= n_params + 10,
        "need at least n^2 + 10 samples for a stable fit"
    );
    let basis = hermitian_basis(dim);
    let points: Vec<ProjectivePoint> = (0..n_samples)
        .map(|_| ProjectivePoint::haar(dim, rng))
        .collect();

    let design = nalgebra::DMatrix::<f64>::from_fn(n_samples, n_params, |k, a| {
        linalg::trace_product(&basis[a], points[k].matrix()).re
    });
    let rhs = nalgebra::DVector::<f64>::from_fn(n_samples, |k, _| field(&points[k]));

    let svd = design.clone().svd(true, true);
    let max_sv = svd.singular_values.iter().fold(0.0_f64, |a, &s| a.max(s));
    let min_sv = svd
        .singular_values
        .iter()
        .fold(f64::INFINITY, |a, &s| a.min(s));
    if min_sv <= 1e-10 * max_sv {
        return Err(Error::RankDeficientDesign { min_sv });
    }
    let coeffs = svd
        .solve(&rhs, 0.0)
        .map_err(|_| Error::RankDeficientDesign { min_sv })?;

    let misfit = &design * &coeffs - &rhs;
    let residual = (misfit.norm_squared() / n_samples as f64).sqrt();

    let mut mat = CMatrix::zeros(dim, dim);
    for (a, b) in basis.iter().enumerate() {
        mat += b.map(|z| z * cr(coeffs[a]));
    }
    let op = HermitianOperator::new(mat, tol)?;
    Ok(ObservableFit {
        operator: op,
        residual,
    })
}

/// Max deviation of the basis sums sum_i mu([psi_i]) from their mean over
/// Haar-random orthonormal bases. Observable-type fields give zero.
pub fn frame_function_deviation<F, R>(field: &F, dim: usize, n_bases: usize, rng: &mut R) -> f64
where
    F: Fn(&ProjectivePoint) -> f64 + ?Sized,
    R: Rng + ?Sized,
{
    assert!(n_bases >= 2, "need at least two bases to compare sums");
    let sums: Vec<f64> = (0..n_bases)
        .map(|_| {
            let basis = OrthonormalBasis::haar(dim, rng);
            basis.points().iter().map(field).sum()
        })
        .collect();
    let mean = sums.iter().sum::<f64>() / n_bases as f64;
    sums.iter().fold(0.0_f64, |acc, s| acc.max((s - mean).abs()))
}

/// Exact Hamiltonian flow point e^{-iAt} p e^{iAt}, realized spectrally.
/// Used for finite-difference probes of brackets.
pub fn flow_point(a: &HermitianOperator, p: &ProjectivePoint, t: f64) -> ProjectivePoint {
    let (values, vectors) = a.eigen();
    let dim = a.dim();
    let mut u = CMatrix::zeros(dim, dim);
    for (l, v) in values.iter().zip(&vectors) {
        let phase = C64::from_polar(1.0, -l * t);
        u += linalg::outer(v).map(|z| z * phase);
    }
    p.conjugate_by(&u.adjoint())
}

/// Poisson bracket {f_A, k} of an observable function with an arbitrary
/// field, via a central finite difference along the flow of f_A. The sign
/// convention matches [`poisson_bracket`] on operator pairs.
pub fn poisson_bracket_fd<F>(a: &HermitianOperator, k: &F, p: &ProjectivePoint, step: f64) -> f64
where
    F: Fn(&ProjectivePoint) -> f64 + ?Sized,
{
    let fwd = k(&flow_point(a, p, step));
    let bwd = k(&flow_point(a, p, -step));
    -(fwd - bwd) / (2.0 * step)
}

/// Nearest rank-1 projector: the dominant eigenvector's projector.
/// Returns the point and the max entry distance from the input.
pub fn project_to_rank_one(m: &CMatrix) -> (ProjectivePoint, f64) {
    let sym = (m + m.adjoint()).map(|z| z * cr(0.5));
    let (_, vectors) = linalg::hermitian_eigen(&sym);
    let top = vectors.last().expect("nonempty matrix");
    let point = ProjectivePoint::from_vector(top).expect("unit eigenvector");
    let defect = linalg::max_entry_diff(point.matrix(), m);
    (point, defect)
}

/// Central finite difference of a field along a tangent vector, re-projecting
/// the displaced matrix to the nearest rank-1 projector.
pub fn directional_derivative_fd<F>(field: &F, v: &TangentVector, step: f64) -> f64
where
    F: Fn(&ProjectivePoint) -> f64 + ?Sized,
{
    let p = v.base().matrix();
    let fwd = p + v.value().map(|z| z * cr(step));
    let bwd = p - v.value().map(|z| z * cr(step));
    let (pf, _) = project_to_rank_one(&fwd);
    let (pb, _) = project_to_rank_one(&bwd);
    (field(&pf) - field(&pb)) / (2.0 * step)
}

/// Random tangent vector at p, drawn through a GUE generator.
pub fn random_tangent<R: Rng + ?Sized>(p: &ProjectivePoint, rng: &mut R) -> TangentVector {
    let a = random_hermitian(p.dim(), 1.0, rng);
    TangentVector::from_generator(p, &a).expect("same dim by construction")
}

/// A random Hermitian operator commuting with p: a multiple of p plus a
/// Hermitian block supported on the orthocomplement of the line.
pub fn commuting_with_point<R: Rng + ?Sized>(
    p: &ProjectivePoint,
    rng: &mut R,
) -> HermitianOperator {
    let dim = p.dim();
    let psi = p.vector();
    // Complete psi to an orthonormal basis by Gram-Schmidt on Gaussian fill.
    let mut vectors: Vec<CVector> = vec![psi];
    while vectors.len() < dim {
        let mut candidate = complex_gaussian_vector(dim, rng);
        for v in &vectors {
            let overlap = v.dotc(&candidate);
            candidate -= v.map(|z| z * overlap);
        }
        let norm = candidate.norm();
        if norm > 1e-8 {
            vectors.push(candidate.map(|z| z / cr(norm)));
        }
    }
    let c0: f64 = rng.random_range(-2.0..2.0);
    let mut mat = p.matrix().map(|z| z * cr(c0));
    let m = dim - 1;
    let block = random_hermitian(m, 1.0, rng);
    for i in 0..m {
        for j in 0..m {
            let vi = &vectors[i + 1];
            let vj = &vectors[j + 1];
            let coeff = block.matrix()[(i, j)];
            for r in 0..dim {
                for c in 0..dim {
                    mat[(r, c)] += coeff * vi[r] * vj[c].conj();
                }
            }
        }
    }
    let sym = (&mat + mat.adjoint()).map(|z| z * cr(0.5));
    HermitianOperator::from_parts(sym)
}
