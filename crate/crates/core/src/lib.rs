//! Nilpotent graphs of finite groups.
//!
//! Groups are explicit Cayley tables ([`Group`]); subgroups are bitsets
//! ([`SubgroupSet`]). On top of that sit the structural computations
//! ([`structure`]), the nilpotent / reduced / commuting graphs ([`graphs`]),
//! the group-class predicates ([`classify`]) and a harness that evaluates
//! the connectivity and diameter statements over a catalog of small groups
//! ([`verify`]).

pub mod analysis;
pub mod arith;
pub mod build;
pub mod classify;
pub mod error;
pub mod graphs;
pub mod group;
pub mod oracle;
pub mod spec;
pub mod structure;
pub mod subgroup;
pub mod verify;

pub use analysis::Analysis;
pub use error::{GraphError, GroupError, VerifyError};
pub use graphs::{Diameter, Distance, GraphKind, GroupGraph, NilTable};
pub use group::{Element, Group, Limits, Quotient};
pub use spec::{GroupSpec, SpecKind};
pub use subgroup::{closure, SubgroupSet};
