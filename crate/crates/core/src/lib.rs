//! Exact verification of modified diagonal classes on powers of an abelian
//! variety.
//!
//! Two independent layers:
//!
//! * [`diagonal`] and [`grading`] replay the Chow-level argument that the
//!   modified diagonal on `X^m` is rationally zero for `m >= 2g + 1`, and
//!   [`certificate`] records it step by step;
//! * [`cohomology`] computes every class exactly in the exterior algebra
//!   model of `H^*(X^m)`.
//!
//! [`cli`] drives both from the command line.

pub mod certificate;
pub mod cli;
pub mod cohomology;
pub mod diagonal;
pub mod error;
pub mod exact;
pub mod grading;

pub use certificate::{replay_proof, Certificate, ReplayOptions, Step, StepKind, StepStatus, Verdict};
pub use cohomology::{
    class_of_cycle, class_of_twist, integrate, kunneth_component, profile_support, pullback, pushforward, wedge,
    ExtClass, ExtMonomial, GeneratorId, LinearMapSpec,
};
pub use diagonal::{
    cycle_equal, modified_diagonal, mult_pushforward_all, mult_pushforward_factor, normalize_twist, proj_pushforward,
    AmbientParams, FormalCycle, TwistVector,
};
pub use error::{Error, Result};
pub use exact::{Rational, SparseCombo};
pub use grading::{admissible_degrees, filter_top, prove_empty_pigeonhole, weight_from_eigenvalue, MultiDegree, PigeonholeOutcome};
