//! Link-weight design for multi-topology routing under delay and loss
//! constraints: real (MTR) topologies found by local search, and virtual
//! topologies whose weights combine the base metrics through a multiplier.
//!
//! Start with [`instance::synth_instance`] or [`instance::sndlib_instance`],
//! design with [`mtr::greedy_mtr`] or [`vmtr::design_vmtr`], then check the
//! result with [`eval::evaluate_plan`].

pub mod csp;
pub mod error;
pub mod eval;
pub mod graph;
pub mod ilp;
pub mod instance;
pub mod metrics;
pub mod mtr;
pub mod network;
pub mod parallel;
pub mod plan;
pub mod vmtr;

pub use error::{Error, Result};
pub use metrics::{Demand, MetricSet, Multiplier};
pub use network::Network;
pub use plan::DesignPlan;
