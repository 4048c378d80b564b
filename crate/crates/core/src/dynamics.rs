//! Flow equivalence on the projective phase space.
//!
//! The exact unitary flow p(t) = U_t p0 U_t^dagger (spectral propagator) is
//! the oracle; the Hamiltonian flow integrates dp/dt = -i[H, p] with
//! classical fourth-order Runge-Kutta, re-projecting each step to the
//! nearest rank-1 projector and recording the projection defect.

use crate::error::{Error, Result};
use crate::geometry::project_to_rank_one;
use crate::linalg::{self, commutator, cr, CMatrix, C64, I_C};
use crate::measure::LiouvilleDensity;
use crate::operators::{DensityMatrix, HermitianOperator, ProjectivePoint};
use crate::tol::Tolerances;

/// Time-indexed trajectory of projective points with per-step defects.
#[derive(Debug, Clone)]
pub struct FlowResult {
    pub times: Vec<f64>,
    pub trajectory: Vec<ProjectivePoint>,
    /// Max projector-invariant residual per recorded time (exact flow) or
    /// max re-projection defect per integration interval (integrated flow).
    pub defect_series: Vec<f64>,
}

impl FlowResult {
    pub fn max_defect(&self) -> f64 {
        self.defect_series.iter().copied().fold(0.0, f64::max)
    }
}

/// Spectral propagator e^{-iHt}.
pub fn propagator(h: &HermitianOperator, t: f64) -> CMatrix {
    let (values, vectors) = h.eigen();
    let dim = h.dim();
    let mut u = CMatrix::zeros(dim, dim);
    for (l, v) in values.iter().zip(&vectors) {
        let phase = C64::from_polar(1.0, -l * t);
        u += linalg::outer(v).map(|z| z * phase);
    }
    u
}

/// Exact evolution p(t) = U_t p0 U_t^dagger on a time grid.
///
/// The propagator's unitarity defect is checked at every grid time; failure
/// indicates a broken eigendecomposition.
pub fn schrodinger_flow(
    h: &HermitianOperator,
    p0: &ProjectivePoint,
    t_grid: &[f64],
    tol: &Tolerances,
) -> Result<FlowResult> {
    if h.dim() != p0.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: p0.dim(),
        });
    }
    let dim = h.dim();
    let identity = CMatrix::identity(dim, dim);
    let mut trajectory = Vec::with_capacity(t_grid.len());
    let mut defect_series = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let u = propagator(h, t);
        let unitarity = linalg::max_entry_diff(&(&u * u.adjoint()), &identity);
        if unitarity > tol.unitarity {
            return Err(Error::EigenFailure);
        }
        let p = p0.conjugate_by(&u.adjoint());
        let idem = linalg::max_entry_diff(&(p.matrix() * p.matrix()), p.matrix());
        trajectory.push(p);
        defect_series.push(unitarity.max(idem));
    }
    Ok(FlowResult {
        times: t_grid.to_vec(),
        trajectory,
        defect_series,
    })
}

fn von_neumann_rhs(h: &CMatrix, p: &CMatrix) -> CMatrix {
    commutator(h, p).map(|z| z * (-I_C))
}

/// Fourth-order Runge-Kutta on dp/dt = -i[H, p] with rank-1 re-projection
/// after every step.
///
/// Trajectory points are recorded at the grid times; integration between
/// grid times uses uniform sub-steps of size at most `dt`. The step size
/// must satisfy dt <= 1e-2 / ||H||; a projection defect above
/// `tol.proj_defect` aborts integration.
pub fn hamilton_flow(
    h: &HermitianOperator,
    p0: &ProjectivePoint,
    t_grid: &[f64],
    dt: f64,
    tol: &Tolerances,
) -> Result<FlowResult> {
    if h.dim() != p0.dim() {
        return Err(Error::DimensionMismatch {
            left: h.dim(),
            right: p0.dim(),
        });
    }
    let h_norm = linalg::spectral_norm(h.matrix());
    let bound = 1e-2 / h_norm.max(f64::MIN_POSITIVE);
    if dt > bound {
        return Err(Error::StepTooLarge { dt, bound });
    }

    let hm = h.matrix();
    let mut current = p0.clone();
    let mut current_time = t_grid.first().copied().unwrap_or(0.0);
    let mut trajectory = vec![current.clone()];
    let mut defect_series = vec![0.0];

    for &target in t_grid.iter().skip(1) {
        let span = target - current_time;
        let n_steps = (span.abs() / dt).ceil().max(1.0) as usize;
        let step = span / n_steps as f64;
        let mut interval_defect = 0.0_f64;
        for _ in 0..n_steps {
            let p = current.matrix();
            let k1 = von_neumann_rhs(hm, p);
            let k2 = von_neumann_rhs(hm, &(p + k1.map(|z| z * cr(step / 2.0))));
            let k3 = von_neumann_rhs(hm, &(p + k2.map(|z| z * cr(step / 2.0))));
            let k4 = von_neumann_rhs(hm, &(p + k3.map(|z| z * cr(step))));
            let update = (k1 + k2.map(|z| z * cr(2.0)) + k3.map(|z| z * cr(2.0)) + k4)
                .map(|z| z * cr(step / 6.0));
            let raw = p + update;
            let (projected, defect) = project_to_rank_one(&raw);
            if defect > tol.proj_defect {
                return Err(Error::StepRejected {
                    defect,
                    limit: tol.proj_defect,
                });
            }
            interval_defect = interval_defect.max(defect);
            current = projected;
        }
        current_time = target;
        trajectory.push(current.clone());
        defect_series.push(interval_defect);
    }

    Ok(FlowResult {
        times: t_grid.to_vec(),
        trajectory,
        defect_series,
    })
}

/// Max deviation between two flows at shared grid times (entrywise).
pub fn flow_deviation(a: &FlowResult, b: &FlowResult) -> f64 {
    a.trajectory
        .iter()
        .zip(&b.trajectory)
        .fold(0.0_f64, |acc, (x, y)| {
            acc.max(linalg::max_entry_diff(x.matrix(), y.matrix()))
        })
}

/// Transport consistency of phase-space densities: evolving the state and
/// evaluating at p must match evaluating the initial density at the
/// pulled-back point U_t^dagger p U_t. Returns the max defect over probes.
pub fn liouville_transport_check(
    sigma0: &DensityMatrix,
    h: &HermitianOperator,
    t: f64,
    probes: &[ProjectivePoint],
) -> Result<f64> {
    if sigma0.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            left: sigma0.dim(),
            right: h.dim(),
        });
    }
    let u = propagator(h, t);
    let sigma_t = sigma0.evolve_by(&u);
    let density0 = LiouvilleDensity::uncertified(sigma0.clone());
    let density_t = LiouvilleDensity::uncertified(sigma_t);
    let mut max_defect = 0.0_f64;
    for p in probes {
        let forward = density_t.eval(p);
        let pulled_back = density0.eval(&p.conjugate_by(&u));
        max_defect = max_defect.max((forward - pulled_back).abs());
    }
    Ok(max_defect)
}
