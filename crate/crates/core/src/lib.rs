//! Structural fingerprints of networks and random-forest classification of
//! the domains they come from.
//!
//! A graph is summarized by eight numbers: the global clustering coefficient,
//! degree assortativity and the six-entry significance profile of its
//! connected four-node subgraphs against a degree-preserving null ensemble.
//! The [`pipeline`] module ties generation, featurization, classification and
//! community detection together; the `netfp` binary exposes it on the command
//! line.

pub mod dataset;
pub mod error;
pub mod features;
pub mod generators;
pub mod graph;
pub mod learner;
pub mod null_model;
pub mod pipeline;
pub mod rng;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::Graph;
