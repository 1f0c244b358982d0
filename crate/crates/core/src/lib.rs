//! Node-impact (Miuz) and centrality metrics, targeted attack simulation
//! and R-index robustness evaluation on undirected graphs.

pub mod attack;
pub mod error;
pub mod graph;
pub mod harness;
pub mod metrics;
pub mod netgen;

pub use attack::{
    breaking_point, r_a_index, r_index, resilience_count, run_attack, AttackMode, AttackRun,
    AttackTrace, Resilience, Strategy, Strike, TieBreak,
};
pub use error::{Error, Result};
pub use graph::{ComponentPartition, Graph, NodeId};
pub use harness::{ExperimentConfig, ExperimentRun, SummaryTable};
pub use metrics::{MetricKind, MetricVector, MiuzValue};
pub use netgen::{generate, GenSpec};
