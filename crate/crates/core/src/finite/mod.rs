//! Small matrix groups over finite fields, enumerated exhaustively.

pub mod auto;
mod dsu;
pub mod gf;
pub mod group;
pub mod oracle;

pub use auto::{AutoDescriptor, AutoStep, FiniteAutomorphism};
pub use dsu::Dsu;
pub use gf::Gf;
pub use group::{FiniteGroup, GroupKind, GroupType, Mat, DEFAULT_CAP};
pub use oracle::{
    derived_subgroup, quotient_check, subgroup_closure, twisted_partition, unit_class, unit_class_subgroup,
    width_profile, FiniteReport, QuotientCheck, TwistedPartition, UnitClassSubgroup, WidthProfile,
};
