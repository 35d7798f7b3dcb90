//! Exact symbolic verification of additive and semidirect group structures
//! on singular del Pezzo surfaces.
//!
//! The crate has four layers:
//!
//! * [`poly`] and [`matrix`] — sparse multivariate polynomials over the
//!   rationals and fraction-free linear algebra over the fraction field of
//!   the parameter ring;
//! * [`rep`], [`geom`] and [`invariance`] — parametrized projective group
//!   actions and the invariance / equivariance / fixed-locus checks;
//! * [`catalog`] — the classification table, the negative-curve criterion
//!   and the blow-up graph;
//! * [`suite`] — the registered verification checks and their report.
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! "for general parameter values" is always decided at the generic point.

// indexed loops mirror the matrix algebra they implement
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod error;
pub mod geom;
pub mod invariance;
pub mod matrix;
pub mod models;
pub mod poly;
pub mod rep;
pub mod suite;

pub use error::{Error, Result};
pub use geom::{LinearSystem, ProjectiveLine, ProjectivePoint, SurfaceModel};
pub use matrix::PolyMatrix;
pub use poly::{Homogeneity, Monomial, Polynomial, Rat, VariableContext};
pub use rep::{CompositionLaw, GroupKind, Representation};
pub use suite::{run_suite, VerificationReport};
