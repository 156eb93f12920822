//! Clifford algebra R3, its quadratic cone, and bi-slice regular polynomials.
//!
//! The central tool is the splitting of R3 into two copies of the quaternions
//! through the idempotents `omega+ = (1 + e123)/2` and `omega- = (1 - e123)/2`.
//! Products, inverses, polynomial evaluation, zeros, Cauchy integrals and
//! determinants are all computed componentwise on that split.

pub mod bislice;
pub mod cauchy;
pub mod clifford3;
pub mod error;
pub mod parse;
pub mod qdet;
pub mod qsplit;
pub mod stem;
pub mod zeros;

pub use bislice::{BiSlicePoly, QuatPoly};
pub use clifford3::{Blade, CliffordElement, DEFAULT_TOL, OMEGA_MINUS, OMEGA_PLUS};
pub use error::{Component, Error, Result};
pub use qdet::Matrix2;
pub use qsplit::{ConePoint, Quat, QuatPair, SphereDescriptor};
