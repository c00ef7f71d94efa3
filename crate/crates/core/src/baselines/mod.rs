//! Comparison heuristics: greedy connectivity, random transits and EDD-A.

mod edd_a;
mod hops;
mod transit;

pub use edd_a::edd_a;
pub use hops::{expand_hops, ExpandedHopGraph};
pub use transit::{greedy_connectivity, random_distribution};
