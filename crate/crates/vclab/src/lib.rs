//! Desk-scale computational group theory: equations over finite groups,
//! retraction search, bounded verbal-closedness probes, polynomial codes
//! over prime fields, dihedral decomposition analysis, and symbolic word
//! maps on the discrete Heisenberg group.
//!
//! Everything here is exact: group arithmetic is table-driven, field
//! arithmetic is modular, integer arithmetic is overflow-checked. Search
//! routines distinguish a completed negative search (`ABSENT`) from an
//! abandoned one (`UNKNOWN`).
//!
//! Start with the runnable examples (`cargo run --example worked_example`)
//! or the `vclab` binary, which exposes each lab as a subcommand.

pub mod approx;
pub mod centre_lab;
pub mod cli;
pub mod dihedral;
pub mod error;
pub mod fp;
pub mod group;
pub mod heisenberg;
pub mod intmat;
pub mod report;
pub mod spec;
pub mod structure;
pub mod wordmaps;
pub mod words;

pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupRef, Homomorphism, Subgroup};
