//! Node scores used to rank attack targets: the Miuz impact index plus
//! degree, betweenness and harmonic centrality.
//!
//! Every metric is evaluated on the alive subgraph of the graph it is
//! given and leaves the graph untouched.

use std::fmt;
use std::str::FromStr;

use crate::graph::{Graph, NodeId};

mod centrality;
mod miuz;
pub mod oracle;

pub use centrality::{betweenness_all, degree_all, harmonic_all};
pub use miuz::{miuz_all, miuz_all_exact, miuz_single, miuz_to_f64, MiuzValue};

/// Scores closer than this (relative to the larger magnitude, floored at
/// 1) are treated as ties when picking a maximum.
pub const TIE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MetricKind {
    Miuz,
    Degree,
    Betweenness,
    Harmonic,
    Random,
}

impl MetricKind {
    pub const ALL: [MetricKind; 5] = [
        MetricKind::Miuz,
        MetricKind::Degree,
        MetricKind::Betweenness,
        MetricKind::Harmonic,
        MetricKind::Random,
    ];

    /// The four ranking metrics compared in the experiments.
    pub const TARGETED: [MetricKind; 4] = [
        MetricKind::Miuz,
        MetricKind::Degree,
        MetricKind::Betweenness,
        MetricKind::Harmonic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Miuz => "miuz",
            MetricKind::Degree => "degree",
            MetricKind::Betweenness => "betweenness",
            MetricKind::Harmonic => "harmonic",
            MetricKind::Random => "random",
        }
    }
}

impl fmt::Display for MetricKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMetric(pub String);

impl fmt::Display for UnknownMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown metric '{}' (expected miuz, degree, betweenness, harmonic or random)",
            self.0
        )
    }
}

impl std::error::Error for UnknownMetric {}

impl FromStr for MetricKind {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MetricKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownMetric(s.to_string()))
    }
}

/// Per-node scores for one metric; dead nodes carry `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricVector {
    kind: MetricKind,
    scores: Vec<Option<f64>>,
}

impl MetricVector {
    pub fn new(kind: MetricKind, scores: Vec<Option<f64>>) -> Self {
        Self { kind, scores }
    }

    pub(crate) fn from_alive(kind: MetricKind, graph: &Graph, dense: Vec<f64>) -> Self {
        let scores = dense
            .into_iter()
            .enumerate()
            .map(|(node, score)| graph.is_alive(node).then_some(score))
            .collect();
        Self { kind, scores }
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn scores(&self) -> &[Option<f64>] {
        &self.scores
    }

    pub fn get(&self, node: NodeId) -> Option<f64> {
        self.scores.get(node).copied().flatten()
    }

    pub fn max(&self) -> Option<f64> {
        self.scores.iter().flatten().copied().reduce(f64::max)
    }

    /// Highest-scoring node; near-ties (see [`TIE_TOLERANCE`]) go to the
    /// lowest id.
    pub fn argmax(&self) -> Option<NodeId> {
        let best = self.max()?;
        let slack = TIE_TOLERANCE * best.abs().max(1.0);
        self.scores
            .iter()
            .position(|s| matches!(s, Some(v) if *v >= best - slack))
    }

    /// Alive nodes in descending score order, near-ties by ascending id.
    pub fn ranking(&self) -> Vec<NodeId> {
        let mut remaining = self.clone();
        let mut order = Vec::new();
        while let Some(node) = remaining.argmax() {
            order.push(node);
            remaining.scores[node] = None;
        }
        order
    }
}

/// Scores `graph` with `kind`. The random strategy has no scores, so it
/// yields `None`.
pub fn compute(graph: &Graph, kind: MetricKind) -> Option<MetricVector> {
    match kind {
        MetricKind::Miuz => Some(miuz_all(graph)),
        MetricKind::Degree => Some(degree_all(graph)),
        MetricKind::Betweenness => Some(betweenness_all(graph)),
        MetricKind::Harmonic => Some(harmonic_all(graph)),
        MetricKind::Random => None,
    }
}
