//! Targeted node-disconnection attacks and the robustness indices computed
//! from them.
//!
//! An attack strikes every node exactly once. After strike `q` the trace
//! records `s(q)`, the largest alive component as a fraction of the
//! original node count. `R` is the mean of `s` over all strikes and `R_a`
//! the mean over the first `a`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::metrics::{self, miuz_all_exact, miuz_to_f64, MetricKind, MiuzValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AttackMode {
    /// Re-rank the surviving nodes before every strike.
    Sequential,
    /// Rank once on the intact graph and strike in that order.
    Simultaneous,
}

impl AttackMode {
    pub fn name(self) -> &'static str {
        match self {
            AttackMode::Sequential => "sequential",
            AttackMode::Simultaneous => "simultaneous",
        }
    }
}

impl fmt::Display for AttackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AttackMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sequential" => Ok(AttackMode::Sequential),
            "simultaneous" => Ok(AttackMode::Simultaneous),
            other => Err(format!(
                "unknown attack mode '{other}' (expected sequential or simultaneous)"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    LowestId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strategy {
    pub kind: MetricKind,
    pub mode: AttackMode,
    pub tie_break: TieBreak,
    /// Only consumed by the random strategy.
    pub seed: Option<u64>,
}

impl Strategy {
    pub fn new(kind: MetricKind, mode: AttackMode) -> Self {
        Self {
            kind,
            mode,
            tie_break: TieBreak::LowestId,
            seed: None,
        }
    }

    pub fn sequential(kind: MetricKind) -> Self {
        Self::new(kind, AttackMode::Sequential)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Strike {
    /// 1-based strike index.
    pub q: usize,
    pub node: NodeId,
    /// Score that selected the node; `None` for the random strategy.
    pub score: Option<f64>,
    pub lcc_after: usize,
    pub s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackTrace {
    pub original_n: usize,
    pub strategy: Strategy,
    pub strikes: Vec<Strike>,
}

impl AttackTrace {
    /// Builds a trace straight from an `s` series, with placeholder nodes.
    /// Useful for analysing curves that did not come from [`run_attack`].
    pub fn from_series(strategy: Strategy, original_n: usize, series: &[f64]) -> Self {
        let strikes = series
            .iter()
            .enumerate()
            .map(|(i, &s)| Strike {
                q: i + 1,
                node: i,
                score: None,
                lcc_after: (s * original_n as f64).round() as usize,
                s,
            })
            .collect();
        Self {
            original_n,
            strategy,
            strikes,
        }
    }

    pub fn s_series(&self) -> Vec<f64> {
        self.strikes.iter().map(|strike| strike.s).collect()
    }

    pub fn order(&self) -> Vec<NodeId> {
        self.strikes.iter().map(|strike| strike.node).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.strikes.len() == self.original_n
    }

    /// Mean of `s(q)` over the whole attack.
    pub fn r_index(&self) -> Result<f64> {
        if !self.is_complete() {
            return Err(Error::IncompleteTrace {
                strikes: self.strikes.len(),
                original_n: self.original_n,
            });
        }
        self.r_a_index(self.original_n)
    }

    /// Mean of `s(q)` over the first `a` strikes.
    pub fn r_a_index(&self, a: usize) -> Result<f64> {
        if a == 0 || a > self.original_n {
            return Err(Error::PrefixOutOfRange {
                a,
                original_n: self.original_n,
            });
        }
        if a > self.strikes.len() {
            return Err(Error::IncompleteTrace {
                strikes: self.strikes.len(),
                original_n: self.original_n,
            });
        }
        let total: f64 = self.strikes[..a].iter().map(|strike| strike.s).sum();
        Ok(total / a as f64)
    }
}

pub fn r_index(trace: &AttackTrace) -> Result<f64> {
    trace.r_index()
}

pub fn r_a_index(trace: &AttackTrace, a: usize) -> Result<f64> {
    trace.r_a_index(a)
}

/// Step-by-step attack on a private copy of the graph.
#[derive(Debug, Clone)]
pub struct AttackRun {
    graph: Graph,
    strategy: Strategy,
    original_n: usize,
    /// Fixed strike order with selection scores, for non-adaptive attacks.
    plan: Option<Vec<(NodeId, Option<f64>)>>,
    q: usize,
}

impl AttackRun {
    pub fn new(graph: &Graph, strategy: Strategy) -> Result<Self> {
        if !graph.is_fresh() {
            return Err(Error::PartiallyAttacked {
                dead: graph.node_count() - graph.alive_count(),
                node_count: graph.node_count(),
            });
        }
        let plan = match (strategy.kind, strategy.mode) {
            (MetricKind::Random, _) => {
                let seed = strategy.seed.ok_or(Error::MissingSeed)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut order: Vec<NodeId> = (0..graph.node_count()).collect();
                order.shuffle(&mut rng);
                Some(order.into_iter().map(|node| (node, None)).collect())
            }
            (kind, AttackMode::Simultaneous) => Some(static_ranking(graph, kind)),
            (_, AttackMode::Sequential) => None,
        };
        Ok(Self {
            graph: graph.clone(),
            strategy,
            original_n: graph.node_count(),
            plan,
            q: 0,
        })
    }

    /// Current (partially attacked) graph.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn strikes_done(&self) -> usize {
        self.q
    }

    fn select(&self) -> Option<(NodeId, Option<f64>)> {
        if let Some(plan) = &self.plan {
            return plan.get(self.q).copied();
        }
        // Without edges every metric is identically zero.
        if self.graph.edge_count() == 0 {
            return self.graph.alive_nodes().next().map(|node| (node, Some(0.0)));
        }
        match self.strategy.kind {
            MetricKind::Miuz => {
                let scores = miuz_all_exact(&self.graph);
                best_exact(&scores).map(|(node, value)| (node, Some(miuz_to_f64(value))))
            }
            kind => {
                let scores = metrics::compute(&self.graph, kind)?;
                let node = scores.argmax()?;
                Some((node, scores.get(node)))
            }
        }
    }
}

impl Iterator for AttackRun {
    type Item = Strike;

    fn next(&mut self) -> Option<Strike> {
        let (node, score) = self.select()?;
        self.graph
            .disconnect_node(node)
            .expect("selected node is alive");
        self.q += 1;
        let lcc_after = self.graph.largest_component_size();
        Some(Strike {
            q: self.q,
            node,
            score,
            lcc_after,
            s: lcc_after as f64 / self.original_n as f64,
        })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.original_n - self.q;
        (left, Some(left))
    }
}

/// Highest exact score, lowest id among equals.
fn best_exact(scores: &[Option<MiuzValue>]) -> Option<(NodeId, MiuzValue)> {
    let mut best: Option<(NodeId, MiuzValue)> = None;
    for (node, value) in scores.iter().enumerate() {
        if let Some(value) = *value {
            if best.is_none_or(|(_, b)| value > b) {
                best = Some((node, value));
            }
        }
    }
    best
}

fn static_ranking(graph: &Graph, kind: MetricKind) -> Vec<(NodeId, Option<f64>)> {
    if kind == MetricKind::Miuz {
        let scores = miuz_all_exact(graph);
        let mut ranked: Vec<(NodeId, MiuzValue)> = scores
            .iter()
            .enumerate()
            .filter_map(|(node, value)| value.map(|v| (node, v)))
            .collect();
        ranked.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        return ranked
            .into_iter()
            .map(|(node, value)| (node, Some(miuz_to_f64(value))))
            .collect();
    }
    let scores = metrics::compute(graph, kind).expect("random handled by caller");
    scores
        .ranking()
        .into_iter()
        .map(|node| (node, scores.get(node)))
        .collect()
}

/// Runs the attack to exhaustion. The input graph is left untouched.
pub fn run_attack(graph: &Graph, strategy: Strategy) -> Result<AttackTrace> {
    let run = AttackRun::new(graph, strategy)?;
    let strikes = run.collect();
    Ok(AttackTrace {
        original_n: graph.node_count(),
        strategy,
        strikes,
    })
}

/// First strike at which the Miuz attack leaves a strictly larger
/// component than the best competing strategy. Ties keep Miuz ahead.
pub fn breaking_point(traces: &BTreeMap<MetricKind, AttackTrace>) -> Result<Option<usize>> {
    let miuz = traces.get(&MetricKind::Miuz).ok_or(Error::MissingMiuzTrace)?;
    for trace in traces.values() {
        if trace.original_n != miuz.original_n {
            return Err(Error::MismatchedTraces {
                expected: miuz.original_n,
                found: trace.original_n,
            });
        }
    }
    let rivals: Vec<&AttackTrace> = traces
        .iter()
        .filter(|(&kind, _)| kind != MetricKind::Miuz)
        .map(|(_, trace)| trace)
        .collect();
    let horizon = traces.values().map(|t| t.strikes.len()).min().unwrap_or(0);
    for i in 0..horizon {
        let best_rival = rivals
            .iter()
            .map(|t| t.strikes[i].s)
            .reduce(f64::min);
        if let Some(best_rival) = best_rival {
            if miuz.strikes[i].s > best_rival {
                return Ok(Some(i + 1));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Resilience {
    pub count: usize,
    /// The threshold was never exceeded; `count` is then the node count.
    pub exhausted: bool,
}

/// Number of sequential disconnections (driven by `kind`) until the largest
/// Miuz among the surviving nodes exceeds `threshold`.
pub fn resilience_count(
    graph: &Graph,
    kind: MetricKind,
    threshold: f64,
    seed: Option<u64>,
) -> Result<Resilience> {
    if !(threshold >= 0.0) {
        return Err(Error::InvalidThreshold(threshold));
    }
    let exceeds = |g: &Graph| {
        miuz_all_exact(g)
            .into_iter()
            .flatten()
            .max()
            .is_some_and(|max| miuz_to_f64(max) > threshold)
    };
    let mut strategy = Strategy::sequential(kind);
    strategy.seed = seed;
    let mut run = AttackRun::new(graph, strategy)?;
    if exceeds(run.graph()) {
        return Ok(Resilience {
            count: 0,
            exhausted: false,
        });
    }
    while run.next().is_some() {
        if exceeds(run.graph()) {
            return Ok(Resilience {
                count: run.strikes_done(),
                exhausted: false,
            });
        }
    }
    Ok(Resilience {
        count: graph.node_count(),
        exhausted: true,
    })
}
