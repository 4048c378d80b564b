//! Central tolerance configuration.
//!
//! Every thresholded decision in the crate reads its tolerance from this one
//! record so that whole suites can be re-run tighter or looser from the CLI.

use crate::error::{Error, Result};

macro_rules! tolerances {
    ($($(#[$doc:meta])* $name:ident = $default:expr;)*) => {
        /// Named numerical tolerances with library-wide defaults.
        #[derive(Debug, Clone, PartialEq)]
        pub struct Tolerances {
            $($(#[$doc])* pub $name: f64,)*
        }

        impl Default for Tolerances {
            fn default() -> Self {
                Self { $($name: $default,)* }
            }
        }

        impl Tolerances {
            /// All recognized tolerance names, in declaration order.
            pub fn names() -> &'static [&'static str] {
                &[$(stringify!($name),)*]
            }

            pub fn get(&self, name: &str) -> Result<f64> {
                match name {
                    $(stringify!($name) => Ok(self.$name),)*
                    _ => Err(Error::UnknownTolerance(name.to_string())),
                }
            }

            pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
                match name {
                    $(stringify!($name) => { self.$name = value; Ok(()) })*
                    _ => Err(Error::UnknownTolerance(name.to_string())),
                }
            }
        }
    };
}

tolerances! {
    /// Max entry deviation from the conjugate transpose.
    herm = 1e-12;
    /// Symmetrization defect above which raw input is rejected as corrupt.
    herm_reject = 1e-6;
    /// Max entry deviation of T*T from T for projectors.
    idem = 1e-10;
    /// Distance of projector eigenvalues from {0, 1}.
    eig_binary = 1e-8;
    /// Deviation of a unit trace.
    trace_one = 1e-10;
    /// Floor on the min eigenvalue of positive semidefinite operators.
    psd = 1e-10;
    /// Gram-matrix deviation for orthonormal bases.
    basis_orth = 1e-10;
    /// Eigenvalue threshold for rank and kernel decisions.
    rank_eig = 1e-8;
    /// Floor on the min eigenvalue of Q - P when deciding P <= Q.
    leq = 1e-9;
    /// Max commutator entry for operator compatibility.
    commute = 1e-9;
    /// Operator-norm certification threshold (idempotence, commutation, products).
    op_cert = 1e-8;
    /// Probe-based identity checks on sampled points.
    probe = 1e-9;
    /// Gauge invariance of the symplectic form and the metric.
    gauge = 1e-10;
    /// Tangency residuals (v = vp + pv and pvp = 0).
    tangent = 1e-9;
    /// Hermiticity and trace residuals of tangent value matrices.
    herm_value = 1e-10;
    /// Deviation of the squared complex structure from minus the identity.
    jj = 1e-9;
    /// Compatibility defect |g(u,v) - omega(u, jv)|.
    kahler = 1e-8;
    /// Certification of the Hamiltonian-field defining identity.
    ham_field = 1e-8;
    /// Algebraic-vs-geometric cross-checks (Poisson bracket and star product).
    xcheck = 1e-9;
    /// Residual below which a field is classified as observable-type.
    obs_fit = 1e-6;
    /// Frame-sum deviation below which a field is classified as observable-type.
    frame_dev = 1e-8;
    /// Monte-Carlo acceptance band width in standard errors.
    mc_sigmas = 4.0;
    /// Finite-difference step.
    fd_step = 1e-5;
    /// Finite-difference agreement with analytic derivatives.
    fd_agree = 1e-6;
    /// t-norm axiom tolerance on evaluation grids.
    grid = 1e-12;
    /// Membership range and grade classification tolerance.
    grade = 1e-10;
    /// Bound slack for effect operators 0 <= T <= I.
    effect = 1e-9;
    /// Exact oracle-path identities.
    oracle = 1e-12;
    /// Max deviation of the integrated flow from the exact flow.
    flow = 1e-8;
    /// Energy conservation along Hamiltonian flows.
    energy = 1e-9;
    /// Purity of trajectory points.
    purity = 1e-8;
    /// Density transport defect.
    transport = 1e-10;
    /// Unitarity defect of exact propagators.
    unitarity = 1e-12;
    /// Per-step projection defect above which integration stops.
    proj_defect = 1e-6;
}
