//! Dense complex matrix helpers shared by every module.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO_C: C64 = C64::new(0.0, 0.0);
pub const ONE_C: C64 = C64::new(1.0, 0.0);
pub const I_C: C64 = C64::new(0.0, 1.0);

pub fn cr(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Largest entry modulus.
pub fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

/// Largest entry modulus of the difference.
pub fn max_entry_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .fold(0.0_f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Deviation of `m` from its own conjugate transpose (max entry modulus).
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    let adj = m.adjoint();
    max_entry_diff(m, &adj)
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b + b * a
}

/// Spectral norm via the largest eigenvalue of m^dagger m.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    let eig = gram.symmetric_eigen();
    eig.eigenvalues
        .iter()
        .fold(0.0_f64, |acc, &l| acc.max(l.max(0.0)))
        .sqrt()
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted ascending.
///
/// Returns `(eigenvalues, eigenvectors)` with `eigenvectors[k]` the unit
/// eigenvector of `eigenvalues[k]`.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, Vec<CVector>) {
    let eig = m.clone().symmetric_eigen();
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = order
        .iter()
        .map(|&k| CVector::from(eig.eigenvectors.column(k).clone_owned()))
        .collect();
    (values, vectors)
}

/// Eigenvalues only, sorted ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let eig = m.clone().symmetric_eigen();
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Rank-1 projector |psi><psi| for a unit vector.
pub fn outer(psi: &CVector) -> CMatrix {
    let n = psi.len();
    CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj())
}

/// Real part of the trace; the imaginary residue is returned alongside.
pub fn trace_re(m: &CMatrix) -> (f64, f64) {
    let t = m.trace();
    (t.re, t.im.abs())
}

/// tr(a b) without forming the product matrix.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> C64 {
    debug_assert_eq!(a.ncols(), b.nrows());
    let n = a.nrows();
    let mut acc = ZERO_C;
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}
