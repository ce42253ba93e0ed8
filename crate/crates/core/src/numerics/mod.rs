//! Numerical building blocks: quadrature, interpolation, finite differences
//! and the adaptive integrator.

pub mod fd;
pub mod interp;
pub mod ode;
pub mod quadrature;

pub use fd::{derivatives_5pt, fornberg_weights};
pub use interp::MonotoneCubic;
pub use ode::{dopri5, OdeFailure, OdeOptions, OdeSolution};
pub use quadrature::{adaptive_simpson, PiecewiseCubic};
