//! Undirected simple graphs over dense node ids, with the connectivity
//! queries the metrics and attack engine are built on.
//!
//! A node is either alive or disconnected. Disconnecting strips every
//! incident edge and removes the node from all later censuses, so the
//! "alive subgraph" is simply every alive node plus every remaining edge.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    alive: Vec<bool>,
    alive_count: usize,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `node_count` nodes. Duplicate edges (in either
    /// orientation) collapse; self-loops and out-of-range ids are rejected.
    pub fn from_edges<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency = vec![Vec::new(); node_count];
        for (u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange { node, node_count });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Self {
            adjacency,
            alive: vec![true; node_count],
            alive_count: node_count,
            edge_count: edge_count / 2,
        })
    }

    /// `node_count` isolated nodes.
    pub fn empty(node_count: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); node_count],
            alive: vec![true; node_count],
            alive_count: node_count,
            edge_count: 0,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// True when no node has been disconnected yet.
    pub fn is_fresh(&self) -> bool {
        self.alive_count == self.node_count()
    }

    pub fn is_alive(&self, node: NodeId) -> bool {
        self.alive.get(node).copied().unwrap_or(false)
    }

    /// Sorted neighbor list. Dead nodes have none.
    pub fn neighbors(&self, node: NodeId) -> &[NodeId] {
        &self.adjacency[node]
    }

    pub fn degree(&self, node: NodeId) -> usize {
        self.adjacency[node].len()
    }

    pub fn alive_nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(node, &alive)| alive.then_some(node))
    }

    /// Every remaining edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_alive(&self, node: NodeId) -> Result<()> {
        if node >= self.node_count() {
            return Err(Error::NodeOutOfRange {
                node,
                node_count: self.node_count(),
            });
        }
        if !self.alive[node] {
            return Err(Error::DeadNode(node));
        }
        Ok(())
    }

    /// Removes every edge incident to `node` and marks it dead.
    pub fn disconnect_node(&mut self, node: NodeId) -> Result<()> {
        match self.check_alive(node) {
            Err(Error::DeadNode(n)) => return Err(Error::AlreadyDisconnected(n)),
            other => other?,
        }
        let neighbors = std::mem::take(&mut self.adjacency[node]);
        for &other in &neighbors {
            let list = &mut self.adjacency[other];
            if let Ok(pos) = list.binary_search(&node) {
                list.remove(pos);
            }
        }
        self.edge_count -= neighbors.len();
        self.alive[node] = false;
        self.alive_count -= 1;
        Ok(())
    }

    /// Component census. With `alive_only` dead nodes are left unlabeled;
    /// otherwise each dead node counts as a singleton.
    pub fn connected_components(&self, alive_only: bool) -> ComponentPartition {
        let n = self.node_count();
        let mut labels = vec![None; n];
        let mut label_sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if labels[start].is_some() || (alive_only && !self.alive[start]) {
                continue;
            }
            let label = label_sizes.len();
            labels[start] = Some(label);
            queue.push_back(start);
            let mut size = 0;
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in &self.adjacency[u] {
                    if labels[v].is_none() {
                        labels[v] = Some(label);
                        queue.push_back(v);
                    }
                }
            }
            label_sizes.push(size);
        }
        ComponentPartition::new(labels, label_sizes)
    }

    /// Size of the largest component among alive nodes, 0 when none are alive.
    pub fn largest_component_size(&self) -> usize {
        self.connected_components(true).largest()
    }

    /// Alive nodes whose removal splits their component.
    pub fn articulation_points(&self) -> BTreeSet<NodeId> {
        let lowlink = LowLink::new(self);
        self.alive_nodes()
            .filter(|&node| lowlink.is_articulation(node))
            .collect()
    }

    /// Hop distances from `source` over the alive subgraph; `None` marks
    /// unreachable (and dead) nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Result<Vec<Option<usize>>> {
        self.check_alive(source)?;
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = next;
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    labels: Vec<Option<usize>>,
    label_sizes: Vec<usize>,
    sizes: Vec<usize>,
}

impl ComponentPartition {
    fn new(labels: Vec<Option<usize>>, label_sizes: Vec<usize>) -> Self {
        let mut sizes = label_sizes.clone();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Self {
            labels,
            label_sizes,
            sizes,
        }
    }

    /// Component id of `node`, `None` for nodes outside the census.
    pub fn label(&self, node: NodeId) -> Option<usize> {
        self.labels[node]
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    /// Component sizes, largest first.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn largest(&self) -> usize {
        self.sizes.first().copied().unwrap_or(0)
    }

    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    pub fn size_of_label(&self, label: usize) -> usize {
        self.label_sizes[label]
    }

    /// Size of the component containing `node`, 0 for nodes outside the census.
    pub fn component_size(&self, node: NodeId) -> usize {
        self.labels[node].map_or(0, |l| self.label_sizes[l])
    }
}

const UNVISITED: usize = usize::MAX;

/// DFS low-link data over the alive subgraph.
///
/// For every node `v` the DFS records which child subtrees are cut off
/// when `v` goes away (children `c` with `low[c] >= disc[v]`), summarised
/// as their count, total size and largest size.
#[derive(Debug)]
pub(crate) struct LowLink {
    parent: Vec<Option<NodeId>>,
    component_size: Vec<usize>,
    cut_children: Vec<usize>,
    cut_total: Vec<usize>,
    cut_largest: Vec<usize>,
}

impl LowLink {
    pub(crate) fn new(graph: &Graph) -> Self {
        let n = graph.node_count();
        let mut disc = vec![UNVISITED; n];
        let mut low = vec![UNVISITED; n];
        let mut subtree = vec![0usize; n];
        let mut parent = vec![None; n];
        let mut component_size = vec![0usize; n];
        let mut cut_children = vec![0usize; n];
        let mut cut_total = vec![0usize; n];
        let mut cut_largest = vec![0usize; n];
        let mut clock = 0;
        let mut stack: Vec<(NodeId, usize)> = Vec::new();
        let mut members: Vec<NodeId> = Vec::new();

        for root in graph.alive_nodes() {
            if disc[root] != UNVISITED {
                continue;
            }
            members.clear();
            disc[root] = clock;
            low[root] = clock;
            clock += 1;
            subtree[root] = 1;
            stack.push((root, 0));
            members.push(root);

            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let adj = graph.neighbors(v);
                if *next < adj.len() {
                    let w = adj[*next];
                    *next += 1;
                    if disc[w] == UNVISITED {
                        parent[w] = Some(v);
                        disc[w] = clock;
                        low[w] = clock;
                        clock += 1;
                        subtree[w] = 1;
                        stack.push((w, 0));
                        members.push(w);
                    } else if parent[v] != Some(w) {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(p) = parent[v] {
                        low[p] = low[p].min(low[v]);
                        subtree[p] += subtree[v];
                        if low[v] >= disc[p] {
                            cut_children[p] += 1;
                            cut_total[p] += subtree[v];
                            cut_largest[p] = cut_largest[p].max(subtree[v]);
                        }
                    }
                }
            }
            let size = subtree[root];
            for &m in &members {
                component_size[m] = size;
            }
        }

        Self {
            parent,
            component_size,
            cut_children,
            cut_total,
            cut_largest,
        }
    }

    pub(crate) fn is_articulation(&self, node: NodeId) -> bool {
        if self.parent[node].is_some() {
            self.cut_children[node] >= 1
        } else {
            self.cut_children[node] >= 2
        }
    }

    pub(crate) fn component_size(&self, node: NodeId) -> usize {
        self.component_size[node]
    }

    /// Largest piece left of `node`'s component once `node` is removed.
    pub(crate) fn largest_piece_without(&self, node: NodeId) -> usize {
        let rest = self.component_size[node] - 1 - self.cut_total[node];
        self.cut_largest[node].max(rest)
    }
}
