//! The Miuz impact index.
//!
//! Strip a node's edges while keeping it in the census as a singleton. If
//! that only splits the node itself off its component (or the node had no
//! edges to begin with) the score is 0. Otherwise, with `T` alive nodes and
//! `L` the size of the largest component in the new census, the score is
//! `T / L - 1`. It ranges from 0 up to `T - 1`, reached when every other
//! node ends up isolated.
//!
//! Scores are kept as exact ratios so attack ordering never depends on
//! floating-point rounding.

use std::collections::VecDeque;

use num_rational::Ratio;

use super::{MetricKind, MetricVector};
use crate::error::Result;
use crate::graph::{ComponentPartition, Graph, LowLink, NodeId};

pub type MiuzValue = Ratio<u64>;

pub fn miuz_to_f64(value: MiuzValue) -> f64 {
    *value.numer() as f64 / *value.denom() as f64
}

fn score(alive: usize, largest: usize) -> MiuzValue {
    debug_assert!(largest >= 1 && largest <= alive);
    Ratio::new((alive - largest) as u64, largest as u64)
}

/// Largest component that does not contain a node whose own component has
/// size `own`.
fn largest_elsewhere(parts: &ComponentPartition, own: usize) -> usize {
    let sizes = parts.sizes();
    match sizes.first() {
        Some(&top) if top == own => sizes.get(1).copied().unwrap_or(0),
        Some(&top) => top,
        None => 0,
    }
}

/// Miuz of one alive node, by a direct census of the pieces its removal
/// leaves behind.
pub fn miuz_single(graph: &Graph, node: NodeId) -> Result<MiuzValue> {
    graph.check_alive(node)?;
    if graph.degree(node) == 0 {
        return Ok(Ratio::from_integer(0));
    }
    let parts = graph.connected_components(true);

    let mut seen = vec![false; graph.node_count()];
    seen[node] = true;
    let mut queue = VecDeque::new();
    let mut pieces = 0;
    let mut largest_piece = 0;
    for &start in graph.neighbors(node) {
        if seen[start] {
            continue;
        }
        pieces += 1;
        seen[start] = true;
        queue.push_back(start);
        let mut size = 0;
        while let Some(u) = queue.pop_front() {
            size += 1;
            for &v in graph.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        largest_piece = largest_piece.max(size);
    }

    // One piece means the census only gained the singleton itself.
    if pieces == 1 {
        return Ok(Ratio::from_integer(0));
    }
    let elsewhere = largest_elsewhere(&parts, parts.component_size(node));
    let largest = largest_piece.max(elsewhere).max(1);
    Ok(score(graph.alive_count(), largest))
}

/// Exact Miuz for every node in a single low-link pass; `None` for dead nodes.
pub fn miuz_all_exact(graph: &Graph) -> Vec<Option<MiuzValue>> {
    let lowlink = LowLink::new(graph);
    let parts = graph.connected_components(true);
    let alive = graph.alive_count();
    (0..graph.node_count())
        .map(|node| {
            if !graph.is_alive(node) {
                return None;
            }
            if !lowlink.is_articulation(node) {
                return Some(Ratio::from_integer(0));
            }
            let elsewhere = largest_elsewhere(&parts, lowlink.component_size(node));
            let largest = lowlink.largest_piece_without(node).max(elsewhere).max(1);
            Some(score(alive, largest))
        })
        .collect()
}

pub fn miuz_all(graph: &Graph) -> MetricVector {
    let scores = miuz_all_exact(graph)
        .into_iter()
        .map(|v| v.map(miuz_to_f64))
        .collect();
    MetricVector::new(MetricKind::Miuz, scores)
}
