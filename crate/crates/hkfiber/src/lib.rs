//! Pointwise (fiberwise) linear algebra of hyperkähler geometry.
//!
//! The crate models the flat fiber ℍⁿ (n ≤ 3) with its quaternionic triple
//! I, J, K, the complexified exterior algebra on the cotangent space, the
//! SU(2) action on forms, Hodge-type decompositions for every induced
//! complex structure, curvature-valued forms, and the positivity predicates
//! of Kähler geometry. On top of that it ships a registry of verification
//! suites that machine-check the identities over seeded random instances in
//! exact rational or floating-point arithmetic, emitting replayable JSON
//! reports.

pub mod curvature;
pub mod error;
pub mod fiber;
pub mod form;
pub mod kahler;
pub mod linalg;
pub mod quat;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod su2;
pub mod suites;

pub use error::{AlgebraError, SuiteError};
pub use fiber::{CovAction, FiberModel};
pub use form::Form;
pub use quat::{InducedStructure, Quaternion, UnitQuaternion};
pub use report::{Backend, Failure, SuiteConfig, VerificationReport};
pub use scalar::{Cx, RealScalar};
