//! Exact verification of the product formula for Euler characteristics of
//! Quot schemes of singular rank-2 torus-equivariant reflexive sheaves on
//! `C^3`.
//!
//! The closed-form side lives in [`series`]; the geometric side enumerates
//! the torus-fixed locus of graded quotients of the module in [`reflexive`]
//! and evaluates each stratum in [`quotfixed`]. [`partitions`] supplies the
//! plane partition counts both sides are checked against, and [`verify`]
//! packages the comparisons as reports.

pub mod cli;
pub mod error;
pub mod partitions;
pub mod quotfixed;
pub mod reflexive;
pub mod series;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{MonomialIdeal, PlanePartition};
pub use quotfixed::{ConstraintSystem, Coprofile, FixedLocusSummary};
pub use reflexive::{ReflexiveParams, Weight};
pub use series::TruncatedSeries;
pub use verify::VerificationReport;
