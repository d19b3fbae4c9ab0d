//! Analysis and simulation workbench for multiplexing an asynchronous event
//! channel into a 1000BASE-T style 4D-PAM5 word stream.
//!
//! - [`pam`]: exact constellation model (subsets, pages, slices, power).
//! - [`mux`]: echo durations, redundancy checks and round plans.
//! - [`codec`]: word-stream encoder and decoder with event noting.
//! - [`balance`]: symmetry catalog and the repeat/reject balancing solver.
//! - [`stellar`]: coding-gain metrics, two-orbit constellations, sphere limits.
//! - [`stats`]: MDI output power, wobble and change statistics.

pub mod balance;
pub mod codec;
pub mod mux;
pub mod pam;
pub mod stats;
pub mod stellar;
