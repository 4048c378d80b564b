//! Numerical core for fuzzy quantum logic on complex projective phase space.
//!
//! The crate provides dense Hermitian operator algebra and the projector
//! lattice ([`operators`]), the symplectic/Riemannian geometry of the
//! projective space ([`geometry`]), integration against the unitarily
//! invariant measure ([`measure`]), classical fuzzy set machinery ([`fuzzy`]),
//! the non-commutative star product and the quantum logic of idempotent fuzzy
//! events ([`starlogic`]), and flow equivalence checks ([`dynamics`]).
//!
//! Everything is deterministic under a fixed seed: randomness is drawn from
//! labeled streams ([`rng`]) and all thresholded decisions read from one
//! central tolerance record ([`tol::Tolerances`]).

pub mod dynamics;
pub mod error;
pub mod fuzzy;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod measure;
pub mod operators;
pub mod rng;
pub mod starlogic;
pub mod tol;

pub use error::{Error, Result};
pub use tol::Tolerances;
