//! Potential theory of uniform solid ellipsoids in dimension three and up.
//!
//! The whole crate rests on one classical fact: along the confocal family
//! of an ellipsoid, the Newtonian potential of the uniform body collapses
//! to a single one-dimensional integral, for interior, boundary, and
//! exterior points alike. Everything else is bookkeeping around that
//! integral:
//!
//! * [`geometry`] builds ellipsoids, classifies points against the
//!   surface, and solves for the confocal parameter of exterior points.
//! * [`quadrature`] is an adaptive Gauss–Kronrod engine for the finite and
//!   semi-infinite integrals everything else generates.
//! * [`potential`] evaluates the potential and its gradient anywhere in
//!   space, plus hollow-shell and physical gravitational variants.
//! * [`demag`] specializes the interior gradient to the demagnetizing
//!   tensor of magnetostatics, with closed spheroid and triaxial forms
//!   backed by incomplete elliptic integrals.
//! * [`oracle`] cross-checks the above with methods that share no code
//!   with them: Monte Carlo volume integration and finite differences.
//!
//! # Example
//!
//! ```
//! use ellipsoid_core::{potential_at, Ellipsoid, QuadratureConfig};
//!
//! let e = Ellipsoid::new(&[3.0, 2.0, 1.0])?;
//! let cfg = QuadratureConfig::default();
//! let inside = potential_at(&e, &[1.0, -1.0, 0.5], &cfg)?;
//! let outside = potential_at(&e, &[4.0, 2.0, 1.0], &cfg)?;
//! assert!(inside.value > outside.value);
//! # Ok::<(), ellipsoid_core::Error>(())
//! ```

// Reference values are written with every digit the oracle computation
// produced; rounding them to the nearest f64 is the compiler's job.
#![allow(clippy::excessive_precision)]

pub mod demag;
mod elliptic;
pub mod error;
pub mod geometry;
pub mod oracle;
pub mod potential;
pub mod quadrature;
mod special;

pub use demag::{
    demag_closed_triaxial, demag_factors_integral, demag_oblate, demag_prolate,
    elliptic_e_incomplete, magnetostatic_potential, stray_field, DemagEvaluation, DemagTensor,
    Magnetization,
};
pub use error::Error;
pub use geometry::{Ellipsoid, PointClassification, PointKind, DEFAULT_BOUNDARY_TOL};
pub use oracle::{fd_gradient, fd_laplacian, mc_potential, OracleEstimate};
pub use potential::{
    field_at, gravitational_potential, hollow_shell_potential, kernel_constant, potential_at,
    FieldValue, GravityConfig, MassSpec, PotentialValue,
};
pub use quadrature::{integrate, integrate_tail, IntegralResult, QuadratureConfig};
