//! File formats, benchmark harness and command line for the intermittent
//! TSP solver in `itsp-core`.

pub mod bench;
pub mod cli;
pub mod files;
pub mod verify;
