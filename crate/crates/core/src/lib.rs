//! Core algorithms for the intermittent traveling salesman problem (ITSP).
//!
//! Every node of a symmetric metric network must be processed for `p_i`
//! time units, but a node may never be hotter than a shared limit `B`.
//! Node temperature is a function of the number of consecutively processed
//! units, so long jobs have to be split over several visits, or padded with
//! waiting time. The crate contains:
//!
//! - [`temperature`]: temperature profiles, the consecutive-unit counter and
//!   the [`Instance`] type with its validation.
//! - [`repr`]: the three genotypes (single list, two lists, three lists),
//!   their random constructors, validity checks and repair operators.
//! - [`eval`]: decoders from genotypes to timed [`Schedule`]s and the
//!   objective breakdown.
//! - [`oracle`]: an independent unit-step simulator, an exhaustive optimizer
//!   for tiny instances and a Held–Karp TSP bound.
//! - [`ga`]: the elitist genetic algorithm driving the search.
//! - [`gen`]: deterministic benchmark instance generation.
//!
//! The crate is `no_std` and only needs an allocator. File formats, the
//! benchmark harness and the command-line front end live in the `itsp` crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod eval;
pub mod ga;
pub mod gen;
pub mod oracle;
pub mod repr;
pub mod temperature;

pub use eval::{evaluate, ObjectiveBreakdown, Schedule, Visit};
pub use ga::{GaParams, Individual, RunResult};
pub use repr::{OneList, Representation, RepresentationKind, ThreeList, TwoList};
pub use temperature::{Instance, InstanceViolation, ProfileKind, ProfilePair};

/// Integer time unit. Durations, distances and processing amounts share it.
pub type Units = u64;

/// Zero-based node index.
pub type Node = usize;
