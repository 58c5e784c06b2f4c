//! End-to-end experiment stages: corpus I/O, the repeated-run protocols,
//! confusion aggregation and class communities.

mod community;
mod confusion;
pub mod corpus;
mod protocols;

pub use community::{
    build_similarity_network, community_overlap, detect_communities, modularity,
    network_from_matrix, Partition, WeightedNetwork,
};
pub use confusion::{symmetrize_max, ConfusionAggregate};
pub use protocols::{
    multiclass_run, run_binary_importance, run_multiclass_confusion, ProtocolOptions,
    RankHistogram, RunResult, DEFAULT_MIN_CLASS_SIZE, DEFAULT_RUNS, DEFAULT_TRAIN_FRACTION,
};
