//! Hermitian operators, projectors, projective points and the projector
//! lattice.
//!
//! Operators are stored as full dense matrices; rank and kernel decisions go
//! through eigenvalue thresholding, which is exact at the dimensions (<= 16)
//! this crate targets.

use crate::error::{Error, Result};
use crate::linalg::{
    self, cr, hermitian_eigen, hermitian_eigenvalues, max_abs_entry, max_entry_diff, outer,
    CMatrix, CVector, C64, ONE_C, ZERO_C,
};
use crate::tol::Tolerances;
use rand::Rng;
use rand_distr::StandardNormal;

/// Square complex matrix equal to its conjugate transpose.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    dim: usize,
    mat: CMatrix,
}

/// Result of symmetrizing a raw matrix: the Hermitian part plus the size of
/// the discarded anti-Hermitian part.
#[derive(Debug, Clone)]
pub struct Symmetrized {
    pub op: HermitianOperator,
    pub defect: f64,
}

impl HermitianOperator {
    /// Wrap a matrix that is already Hermitian within `tol.herm`.
    pub fn new(mat: CMatrix, tol: &Tolerances) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let defect = linalg::hermiticity_defect(&mat);
        if defect > tol.herm {
            return Err(Error::NotHermitian {
                defect,
                limit: tol.herm,
            });
        }
        Ok(Self {
            dim: mat.nrows(),
            mat,
        })
    }

    /// Return (raw + raw^dagger)/2 together with the symmetrization defect.
    /// Rejects inputs whose defect exceeds `tol.herm_reject`, which signals a
    /// corrupt operator file rather than rounding noise.
    pub fn symmetrize(raw: CMatrix, tol: &Tolerances) -> Result<Symmetrized> {
        if raw.nrows() != raw.ncols() {
            return Err(Error::NotSquare {
                rows: raw.nrows(),
                cols: raw.ncols(),
            });
        }
        let adj = raw.adjoint();
        let sym = (&raw + &adj).map(|z| z * cr(0.5));
        let anti = (&raw - &adj).map(|z| z * cr(0.5));
        let defect = max_abs_entry(&anti);
        if defect > tol.herm_reject {
            return Err(Error::NotHermitian {
                defect,
                limit: tol.herm_reject,
            });
        }
        Ok(Symmetrized {
            op: Self {
                dim: sym.nrows(),
                mat: sym,
            },
            defect,
        })
    }

    /// Build from entries without validation; callers must guarantee
    /// Hermiticity by construction (sums/products of Hermitian parts).
    pub(crate) fn from_parts(mat: CMatrix) -> Self {
        debug_assert!(linalg::hermiticity_defect(&mat) < 1e-9);
        Self {
            dim: mat.nrows(),
            mat,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            mat: CMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            mat: CMatrix::identity(dim, dim),
        }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let dim = diag.len();
        Self {
            dim,
            mat: CMatrix::from_fn(dim, dim, |i, j| if i == j { cr(diag[i]) } else { ZERO_C }),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.trace().re
    }

    /// Expectation value tr(A p) at a projective point.
    pub fn expectation(&self, p: &ProjectivePoint) -> f64 {
        linalg::trace_product(&self.mat, p.matrix()).re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat)
    }

    pub fn eigen(&self) -> (Vec<f64>, Vec<CVector>) {
        hermitian_eigen(&self.mat)
    }

    /// Unit-vector eigenstates as projective points, in ascending eigenvalue
    /// order.
    pub fn eigenpoints(&self) -> Vec<ProjectivePoint> {
        let (_, vectors) = self.eigen();
        vectors
            .iter()
            .map(|v| ProjectivePoint::from_vector(v).expect("eigenvector is nonzero"))
            .collect()
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            mat: self.mat.map(|z| z * cr(factor)),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            mat: &self.mat + &other.mat,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same_dim(self.dim, other.dim)?;
        Ok(Self {
            dim: self.dim,
            mat: &self.mat - &other.mat,
        })
    }
}

/// Idempotent Hermitian operator with eigenvalues in {0, 1}.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    op: HermitianOperator,
    rank: usize,
}

impl Projector {
    pub fn new(op: HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let idem_defect = max_entry_diff(&(op.matrix() * op.matrix()), op.matrix());
        if idem_defect > tol.idem {
            return Err(Error::NotIdempotent {
                defect: idem_defect,
            });
        }
        let mut rank = 0;
        for value in op.eigenvalues() {
            if (value - 1.0).abs() <= tol.eig_binary {
                rank += 1;
            } else if value.abs() > tol.eig_binary {
                return Err(Error::EigenvalueNotBinary { value });
            }
        }
        Ok(Self { op, rank })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            op: HermitianOperator::zero(dim),
            rank: 0,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim),
            rank: dim,
        }
    }

    /// Projector onto the span of an orthonormal set of columns.
    pub fn from_orthonormal_columns(columns: &[CVector]) -> Self {
        let dim = columns.first().map_or(0, |c| c.len());
        let mut mat = CMatrix::zeros(dim, dim);
        for c in columns {
            mat += outer(c);
        }
        Self {
            op: HermitianOperator::from_parts(mat),
            rank: columns.len(),
        }
    }

    /// Projector onto the span of the standard basis vectors in `indices`.
    pub fn from_basis_indices(dim: usize, indices: &[usize]) -> Self {
        let mut mat = CMatrix::zeros(dim, dim);
        for &i in indices {
            mat[(i, i)] = ONE_C;
        }
        Self {
            op: HermitianOperator::from_parts(mat),
            rank: indices.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank == self.dim()
    }

    /// Orthonormal basis of the range, in deterministic order.
    pub fn range_basis(&self) -> Vec<CVector> {
        let (values, vectors) = self.op.eigen();
        values
            .iter()
            .zip(vectors)
            .filter(|(v, _)| **v > 0.5)
            .map(|(_, vec)| vec)
            .collect()
    }
}

/// Rank-1 projector: a point of the projective space over the Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    proj: Projector,
}

impl ProjectivePoint {
    pub fn new(proj: Projector, tol: &Tolerances) -> Result<Self> {
        if proj.rank() != 1 {
            return Err(Error::WrongRank {
                rank: proj.rank(),
                expected: 1,
            });
        }
        let trace = proj.operator().trace();
        if (trace - 1.0).abs() > tol.trace_one {
            return Err(Error::TraceNotOne { trace });
        }
        Ok(Self { proj })
    }

    /// |psi><psi| for any nonzero vector; the vector is normalized here.
    pub fn from_vector(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if norm == 0.0 {
            return Err(Error::NotPositive { min_eig: 0.0 });
        }
        let unit = psi.map(|z| z / cr(norm));
        let mat = outer(&unit);
        Ok(Self {
            proj: Projector {
                op: HermitianOperator::from_parts(mat),
                rank: 1,
            },
        })
    }

    /// Point concentrated on the `index`-th standard basis vector.
    pub fn standard(dim: usize, index: usize) -> Self {
        Self {
            proj: Projector::from_basis_indices(dim, &[index]),
        }
    }

    /// Sample from the unitarily invariant distribution: a normalized vector
    /// of independent standard complex Gaussian entries.
    pub fn haar<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        assert!(dim >= 2, "projective sampling needs dim >= 2");
        let psi = complex_gaussian_vector(dim, rng);
        Self::from_vector(&psi).expect("Gaussian vector is nonzero almost surely")
    }

    pub fn dim(&self) -> usize {
        self.proj.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        self.proj.matrix()
    }

    pub fn projector(&self) -> &Projector {
        &self.proj
    }

    /// A unit vector spanning the range.
    pub fn vector(&self) -> CVector {
        self.proj
            .range_basis()
            .into_iter()
            .next()
            .expect("rank-1 projector has a range vector")
    }

    /// Conjugated point u^dagger p u.
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        let mat = u.adjoint() * self.matrix() * u;
        let sym = (&mat + mat.adjoint()).map(|z| z * cr(0.5));
        Self {
            proj: Projector {
                op: HermitianOperator::from_parts(sym),
                rank: 1,
            },
        }
    }
}

/// Positive semidefinite Hermitian operator of unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator, tol: &Tolerances) -> Result<Self> {
        let min_eig = op
            .eigenvalues()
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -tol.psd {
            return Err(Error::NotPositive { min_eig });
        }
        let trace = op.trace();
        if (trace - 1.0).abs() > tol.trace_one {
            return Err(Error::TraceNotOne { trace });
        }
        Ok(Self { op })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    pub fn from_point(p: &ProjectivePoint) -> Self {
        Self {
            op: HermitianOperator::from_parts(p.matrix().clone()),
        }
    }

    /// Random mixed state: normalized G G^dagger for a complex Gaussian G.
    pub fn random<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let g = complex_gaussian_matrix(dim, dim, rng);
        let pos = &g * g.adjoint();
        let trace = pos.trace().re;
        let mat = pos.map(|z| z / cr(trace));
        let sym = (&mat + mat.adjoint()).map(|z| z * cr(0.5));
        Self {
            op: HermitianOperator::from_parts(sym),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    /// Conjugated state u sigma u^dagger.
    pub fn evolve_by(&self, u: &CMatrix) -> Self {
        let mat = u * self.matrix() * u.adjoint();
        let sym = (&mat + mat.adjoint()).map(|z| z * cr(0.5));
        Self {
            op: HermitianOperator::from_parts(sym),
        }
    }
}

/// A full orthonormal basis of the Hilbert space.
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    dim: usize,
    vectors: Vec<CVector>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<CVector>, tol: &Tolerances) -> Result<Self> {
        let dim = vectors.len();
        let mut defect = 0.0_f64;
        for (i, a) in vectors.iter().enumerate() {
            if a.len() != dim {
                return Err(Error::DimensionMismatch {
                    left: a.len(),
                    right: dim,
                });
            }
            for (j, b) in vectors.iter().enumerate() {
                let inner = a.dotc(b);
                let target = if i == j { ONE_C } else { ZERO_C };
                defect = defect.max((inner - target).norm());
            }
        }
        if defect > tol.basis_orth {
            return Err(Error::NotOrthonormal { defect });
        }
        Ok(Self { dim, vectors })
    }

    pub fn standard(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| CVector::from_fn(dim, |k, _| if k == i { ONE_C } else { ZERO_C }))
            .collect();
        Self { dim, vectors }
    }

    /// Columns of a Haar-random unitary.
    pub fn haar<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Self {
        let u = haar_unitary(dim, rng);
        let vectors = (0..dim).map(|j| CVector::from(u.column(j).clone_owned())).collect();
        Self { dim, vectors }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vectors(&self) -> &[CVector] {
        &self.vectors
    }

    pub fn points(&self) -> Vec<ProjectivePoint> {
        self.vectors
            .iter()
            .map(|v| ProjectivePoint::from_vector(v).expect("basis vector is unit"))
            .collect()
    }
}

fn check_same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

pub fn complex_gaussian_vector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CVector {
    CVector::from_fn(dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn complex_gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// Haar-random unitary: QR of a complex Gaussian matrix with the R diagonal
/// phases folded into Q.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    let g = complex_gaussian_matrix(dim, dim, rng);
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / cr(d.norm()) } else { ONE_C };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// GUE-style Hermitian draw: (G + G^dagger)/2 scaled.
pub fn random_hermitian<R: Rng + ?Sized>(dim: usize, scale: f64, rng: &mut R) -> HermitianOperator {
    let g = complex_gaussian_matrix(dim, dim, rng);
    let sym = (&g + g.adjoint()).map(|z| z * cr(0.5 * scale));
    HermitianOperator::from_parts(sym)
}

/// Projector onto the span of the first `rank` columns of a Haar unitary.
pub fn random_projector<R: Rng + ?Sized>(
    dim: usize,
    rank: usize,
    rng: &mut R,
) -> Result<Projector> {
    if rank < 1 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let u = haar_unitary(dim, rng);
    let columns: Vec<CVector> = (0..rank).map(|j| CVector::from(u.column(j).clone_owned())).collect();
    Ok(Projector::from_orthonormal_columns(&columns))
}

/// Random projector of uniformly drawn rank in 1..dim (proper subspaces).
pub fn random_proper_projector<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Projector {
    let rank = rng.random_range(1..dim);
    random_projector(dim, rank, rng).expect("rank is in range")
}

/// Operator order A <= B decided by the smallest eigenvalue of B - A.
pub fn operator_leq(a: &HermitianOperator, b: &HermitianOperator, tol: &Tolerances) -> Result<bool> {
    check_same_dim(a.dim(), b.dim())?;
    let diff = b.matrix() - a.matrix();
    let min_eig = hermitian_eigenvalues(&diff)[0];
    Ok(min_eig >= -tol.leq)
}

/// Range inclusion of projectors, decided as operator order.
pub fn projector_leq(p: &Projector, q: &Projector, tol: &Tolerances) -> Result<bool> {
    operator_leq(p.operator(), q.operator(), tol)
}

pub fn orthocomplement(p: &Projector) -> Projector {
    let dim = p.dim();
    let mat = CMatrix::identity(dim, dim) - p.matrix();
    Projector {
        op: HermitianOperator::from_parts(mat),
        rank: dim - p.rank(),
    }
}

/// Greatest lower bound: the projector onto the kernel of (2I - P - Q).
///
/// The kernel is exactly the intersection of the ranges; eigenvalues below
/// `tol.rank_eig` count as zero.
pub fn lattice_meet(p: &Projector, q: &Projector, tol: &Tolerances) -> Result<Projector> {
    check_same_dim(p.dim(), q.dim())?;
    let dim = p.dim();
    let two_i = CMatrix::identity(dim, dim).map(|z| z * cr(2.0));
    let m = two_i - p.matrix() - q.matrix();
    let (values, vectors) = hermitian_eigen(&m);
    let kernel: Vec<CVector> = values
        .iter()
        .zip(vectors)
        .filter(|(v, _)| v.abs() < tol.rank_eig)
        .map(|(_, vec)| vec)
        .collect();
    Ok(Projector::from_orthonormal_columns_padded(dim, &kernel))
}

impl Projector {
    fn from_orthonormal_columns_padded(dim: usize, columns: &[CVector]) -> Self {
        if columns.is_empty() {
            Self::zero(dim)
        } else {
            Self::from_orthonormal_columns(columns)
        }
    }
}

/// Least upper bound via De Morgan: not(meet(not P, not Q)).
pub fn lattice_join(p: &Projector, q: &Projector, tol: &Tolerances) -> Result<Projector> {
    let meet = lattice_meet(&orthocomplement(p), &orthocomplement(q), tol)?;
    Ok(orthocomplement(&meet))
}

/// Joint orthogonal decomposition of a commuting pair.
#[derive(Debug, Clone)]
pub enum CompatibilityDecomposition {
    /// P = r1 v r3 and Q = r2 v r3 with pairwise orthogonal parts.
    Compatible {
        p_only: Projector,
        q_only: Projector,
        shared: Projector,
    },
    Incompatible { commutator_norm: f64 },
}

pub fn compatibility_decomposition(
    p: &Projector,
    q: &Projector,
    tol: &Tolerances,
) -> Result<CompatibilityDecomposition> {
    check_same_dim(p.dim(), q.dim())?;
    let comm = linalg::commutator(p.matrix(), q.matrix());
    let commutator_norm = max_abs_entry(&comm);
    if commutator_norm > tol.commute {
        return Ok(CompatibilityDecomposition::Incompatible { commutator_norm });
    }
    let shared = lattice_meet(p, q, tol)?;
    let p_only = lattice_meet(p, &orthocomplement(q), tol)?;
    let q_only = lattice_meet(&orthocomplement(p), q, tol)?;

    // Reconstruction and pairwise orthogonality are structural here; these
    // asserts catch kernel-threshold misclassification early.
    let p_back = lattice_join(&p_only, &shared, tol)?;
    let q_back = lattice_join(&q_only, &shared, tol)?;
    debug_assert!(max_entry_diff(p_back.matrix(), p.matrix()) < 1e-8);
    debug_assert!(max_entry_diff(q_back.matrix(), q.matrix()) < 1e-8);
    debug_assert!(max_abs_entry(&(p_only.matrix() * q_only.matrix())) < 1e-8);
    debug_assert!(max_abs_entry(&(p_only.matrix() * shared.matrix())) < 1e-8);
    debug_assert!(max_abs_entry(&(q_only.matrix() * shared.matrix())) < 1e-8);

    Ok(CompatibilityDecomposition::Compatible {
        p_only,
        q_only,
        shared,
    })
}

/// The three 2x2 Pauli matrices; staples of the dim-2 test corpus.
pub fn pauli_x() -> HermitianOperator {
    HermitianOperator::from_parts(CMatrix::from_row_slice(
        2,
        2,
        &[ZERO_C, ONE_C, ONE_C, ZERO_C],
    ))
}

pub fn pauli_y() -> HermitianOperator {
    HermitianOperator::from_parts(CMatrix::from_row_slice(
        2,
        2,
        &[ZERO_C, C64::new(0.0, -1.0), C64::new(0.0, 1.0), ZERO_C],
    ))
}

pub fn pauli_z() -> HermitianOperator {
    HermitianOperator::from_real_diagonal(&[1.0, -1.0])
}

/// |+> = (e1 + e2)/sqrt(2).
pub fn plus_point() -> ProjectivePoint {
    let v = CVector::from_vec(vec![cr(1.0), cr(1.0)]);
    ProjectivePoint::from_vector(&v).expect("nonzero")
}

/// |-> = (e1 - e2)/sqrt(2).
pub fn minus_point() -> ProjectivePoint {
    let v = CVector::from_vec(vec![cr(1.0), cr(-1.0)]);
    ProjectivePoint::from_vector(&v).expect("nonzero")
}
