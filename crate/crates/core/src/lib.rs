//! Self-similar axisymmetric flows with swirl.
//!
//! Velocities scale like 1/r and pressure like 1/r² times profiles of the
//! similarity variable ξ = z/r. This crate
//!
//! * solves the viscous profile equations by a damped fixed-point iteration
//!   ([`viscous::picard_solve`]),
//! * evaluates the closed-form inviscid families on half-spaces and cones
//!   ([`euler`]),
//! * checks candidate slip discontinuities of the inviscid problem against
//!   the jump conditions ([`jump`]),
//! * rebuilds physical (r, z) fields for plotting ([`field`]).

pub mod error;
pub mod euler;
pub mod field;
pub mod grid;
pub mod jump;
pub mod numerics;
pub mod profile;
pub mod similarity;
pub mod viscous;

pub use error::{Error, Result};
pub use euler::{euler_conical, euler_continuous, EulerClosedForm, EulerFamily};
pub use field::{reconstruct, PhysicalField};
pub use jump::{certify_nonexistence, Certification, CertifyOptions, Domain, JumpReport};
pub use profile::{serrin_transform, CompactProfile, SimilarityProfile};
pub use similarity::{
    phi, phi_prime, velocities_from_theta, x_to_xi, xi_to_x, Branch, CompactCoordinate,
    FlowParameters,
};
pub use viscous::{classify_regime, picard_solve, RegimeLabel, SolverConfig, ViscousSolution};
