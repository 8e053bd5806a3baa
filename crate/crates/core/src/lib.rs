//! Finite-window laboratory for topological dynamics of Z-actions.
//!
//! The crate estimates Besicovitch and Weyl pseudometrics of point pairs
//! along Følner windows, classifies pairs and factor maps by (Banach)
//! proximality, distality and (mean) equicontinuity, and ships exact
//! implementations of a handful of example systems: an interval
//! homeomorphism with a fibre-wise reflection, a family of shrinking
//! circle flows, the dyadic odometer, a regular Toeplitz subshift, the
//! Thue–Morse subshift and a Sturmian coding of the golden rotation.
//!
//! Every estimate is a finite-window surrogate. Values carry their
//! per-window series so that convergence can be judged by the caller.

pub mod dynamics;
pub mod error;
pub mod estimators;
pub mod factors;
pub mod fixed;
pub mod relations;
pub mod systems;

pub use dynamics::{default_schedule, FolnerSchedule, FolnerWindow, GroupElement, System, WindowFamily};
pub use error::{Error, Result};
pub use estimators::{EstimateKind, PseudometricEstimate, WindowValue};
pub use factors::{FactorMap, FibreSample, FibreSampler, FunctionFamily};
pub use relations::{PairClass, PairSequence, PairVerdict, Tolerances};
