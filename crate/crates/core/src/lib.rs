//! Edge data distribution (EDD) planning.
//!
//! Given a network of edge servers, a set of destination servers and a
//! cloud that can push data to any server at a uniform cost `gamma`, find
//! the cheapest cloud-rooted forest that reaches every destination within
//! the path-length budget `l_limit`.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, dataset loaders
//! and the command-line harness live in the companion `edd` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod baselines;
pub mod closure;
mod error;
pub mod exact;
pub mod generator;
pub mod graph;
pub mod mst;
pub mod nste;
mod rng;
pub mod solution;
pub mod steiner;

pub use baselines::{edd_a, expand_hops, greedy_connectivity, random_distribution, ExpandedHopGraph};
pub use closure::{all_pairs_shortest, InducedView, MetricClosure};
pub use error::EddError;
pub use exact::{brute_force_oracle, build_model, solve_exact, ExactMethod, ExactOutcome, IpModel};
pub use generator::{generate, GeneratorConfig};
pub use graph::{Edge, EddInstance, EdgeServerNetwork, Node, Topology, Weight, CLOUD};
pub use mst::{minimum_spanning_tree, SpanningTree};
pub use nste::edd_nste;
pub use solution::{solution_cost, validate_solution, EddSolution, FeasibilityReport, Violation};
pub use steiner::{approximate_steiner, SteinerTree};

pub type Result<T, E = EddError> = core::result::Result<T, E>;
