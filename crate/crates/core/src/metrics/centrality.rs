use std::collections::VecDeque;

use super::{MetricKind, MetricVector};
use crate::graph::{Graph, NodeId};

/// Number of alive neighbors.
pub fn degree_all(graph: &Graph) -> MetricVector {
    let dense = (0..graph.node_count())
        .map(|node| graph.degree(node) as f64)
        .collect();
    MetricVector::from_alive(MetricKind::Degree, graph, dense)
}

/// Unnormalized betweenness over unordered pairs (Brandes accumulation,
/// one BFS per source, sources in ascending id order).
pub fn betweenness_all(graph: &Graph) -> MetricVector {
    let n = graph.node_count();
    let mut centrality = vec![0.0; n];
    let mut brandes = Brandes::new(n);
    for source in graph.alive_nodes() {
        if graph.degree(source) > 0 {
            brandes.accumulate(graph, source, &mut centrality);
        }
    }
    for value in &mut centrality {
        *value /= 2.0;
    }
    MetricVector::from_alive(MetricKind::Betweenness, graph, centrality)
}

struct Brandes {
    order: Vec<NodeId>,
    dist: Vec<usize>,
    sigma: Vec<f64>,
    delta: Vec<f64>,
    queue: VecDeque<NodeId>,
}

impl Brandes {
    fn new(n: usize) -> Self {
        Self {
            order: Vec::with_capacity(n),
            dist: vec![usize::MAX; n],
            sigma: vec![0.0; n],
            delta: vec![0.0; n],
            queue: VecDeque::with_capacity(n),
        }
    }

    fn accumulate(&mut self, graph: &Graph, source: NodeId, centrality: &mut [f64]) {
        self.dist[source] = 0;
        self.sigma[source] = 1.0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            self.order.push(v);
            let next = self.dist[v] + 1;
            for &w in graph.neighbors(v) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = next;
                    self.queue.push_back(w);
                }
                if self.dist[w] == next {
                    self.sigma[w] += self.sigma[v];
                }
            }
        }

        // Predecessors of w are its neighbors one layer closer to the source.
        for &w in self.order.iter().rev() {
            let coeff = (1.0 + self.delta[w]) / self.sigma[w];
            let layer = self.dist[w];
            for &v in graph.neighbors(w) {
                if self.dist[v] + 1 == layer {
                    self.delta[v] += self.sigma[v] * coeff;
                }
            }
            if w != source {
                centrality[w] += self.delta[w];
            }
        }

        for &v in &self.order {
            self.dist[v] = usize::MAX;
            self.sigma[v] = 0.0;
            self.delta[v] = 0.0;
        }
        self.order.clear();
    }
}

/// Sum of reciprocal hop distances to every other alive node; unreachable
/// nodes contribute nothing.
pub fn harmonic_all(graph: &Graph) -> MetricVector {
    let n = graph.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut visited = Vec::with_capacity(n);
    let mut queue = VecDeque::with_capacity(n);
    let mut centrality = vec![0.0; n];
    for source in graph.alive_nodes() {
        if graph.degree(source) == 0 {
            continue;
        }
        dist[source] = 0;
        queue.push_back(source);
        let mut total = 0.0;
        while let Some(v) = queue.pop_front() {
            visited.push(v);
            let next = dist[v] + 1;
            for &w in graph.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = next;
                    total += 1.0 / next as f64;
                    queue.push_back(w);
                }
            }
        }
        centrality[source] = total;
        for &v in &visited {
            dist[v] = usize::MAX;
        }
        visited.clear();
    }
    MetricVector::from_alive(MetricKind::Harmonic, graph, centrality)
}
