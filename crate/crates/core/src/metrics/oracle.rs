//! Slow reference implementations, meant for graphs of a few dozen nodes.
//! They share no code with the fast paths they are checked against.

use num_rational::Ratio;

use super::{MetricKind, MetricVector, MiuzValue};
use crate::error::Result;
use crate::graph::{Graph, NodeId};

/// Component sizes of the alive nodes under an explicit edge list.
fn census(alive: &[bool], edges: &[(NodeId, NodeId)]) -> Vec<usize> {
    let n = alive.len();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = vec![false; n];
    let mut sizes = Vec::new();
    for start in 0..n {
        if !alive[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(u) = stack.pop() {
            size += 1;
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        sizes.push(size);
    }
    sizes
}

/// Miuz by literal before/after component census.
pub fn miuz_bruteforce(graph: &Graph, node: NodeId) -> Result<MiuzValue> {
    graph.check_alive(node)?;
    let alive: Vec<bool> = (0..graph.node_count()).map(|v| graph.is_alive(v)).collect();
    let edges: Vec<_> = graph.edges().collect();
    let before = census(&alive, &edges);
    let stripped: Vec<_> = edges
        .iter()
        .copied()
        .filter(|&(u, v)| u != node && v != node)
        .collect();
    if stripped.len() == edges.len() {
        return Ok(Ratio::from_integer(0));
    }
    let after = census(&alive, &stripped);
    if after.len() == before.len() + 1 {
        return Ok(Ratio::from_integer(0));
    }
    let total: usize = after.iter().sum();
    let largest = *after.iter().max().expect("node itself is in the census");
    Ok(Ratio::new(total as u64, largest as u64) - 1)
}

/// Betweenness by counting shortest paths for every unordered pair: `v`
/// lies on `sigma(s,v) * sigma(v,t)` of the `sigma(s,t)` geodesics exactly
/// when `d(s,v) + d(v,t) = d(s,t)`.
pub fn betweenness_bruteforce(graph: &Graph) -> MetricVector {
    let n = graph.node_count();
    let alive: Vec<NodeId> = graph.alive_nodes().collect();
    let mut dist = vec![vec![None; n]; n];
    let mut count = vec![vec![0u128; n]; n];
    for &s in &alive {
        // Layer-by-layer path counting.
        dist[s][s] = Some(0usize);
        count[s][s] = 1;
        let mut frontier = vec![s];
        let mut depth = 0;
        while !frontier.is_empty() {
            depth += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for &v in graph.neighbors(u) {
                    match dist[s][v] {
                        None => {
                            dist[s][v] = Some(depth);
                            count[s][v] = count[s][u];
                            next.push(v);
                        }
                        Some(d) if d == depth => count[s][v] += count[s][u],
                        _ => {}
                    }
                }
            }
            frontier = next;
        }
    }

    let mut scores = vec![0.0; n];
    for (i, &s) in alive.iter().enumerate() {
        for &t in &alive[i + 1..] {
            let Some(d_st) = dist[s][t] else { continue };
            let total = count[s][t] as f64;
            for &v in &alive {
                if v == s || v == t {
                    continue;
                }
                if let (Some(d_sv), Some(d_vt)) = (dist[s][v], dist[v][t]) {
                    if d_sv + d_vt == d_st {
                        scores[v] += (count[s][v] * count[v][t]) as f64 / total;
                    }
                }
            }
        }
    }
    MetricVector::from_alive(MetricKind::Betweenness, graph, scores)
}
