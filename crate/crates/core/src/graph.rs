//! Immutable simple undirected graphs.
//!
//! Nodes are dense indices `0..n`. Adjacency is stored in compressed form with
//! every neighbor list sorted ascending, so iteration order (and therefore any
//! seeded simulation built on it) is reproducible across runs.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense node index in `0..n`.
pub type NodeId = usize;

/// Simple undirected graph: no self-loops, no parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    neighbors: Vec<NodeId>,
}

/// Maps node ids of a source graph to ids of a derived graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabel {
    forward: Vec<Option<NodeId>>,
    retained: Vec<NodeId>,
}

impl Relabel {
    fn from_retained(source_n: usize, retained: Vec<NodeId>) -> Self {
        let mut forward = vec![None; source_n];
        for (new, &old) in retained.iter().enumerate() {
            forward[old] = Some(new);
        }
        Relabel { forward, retained }
    }

    /// New id of `old`, or `None` if the node was dropped.
    pub fn get(&self, old: NodeId) -> Option<NodeId> {
        self.forward.get(old).copied().flatten()
    }

    /// Original id of each retained node, indexed by new id.
    pub fn retained(&self) -> &[NodeId] {
        &self.retained
    }

    pub fn dropped(&self) -> usize {
        self.forward.len() - self.retained.len()
    }

    pub fn is_identity(&self) -> bool {
        self.dropped() == 0 && self.retained.iter().enumerate().all(|(i, &o)| i == o)
    }

    /// Composes `self` (a → b) with `next` (b → c) into a → c.
    pub fn then(&self, next: &Relabel) -> Relabel {
        let retained: Vec<NodeId> = next.retained.iter().map(|&b| self.retained[b]).collect();
        Relabel::from_retained(self.forward.len(), retained)
    }
}

impl Graph {
    /// Builds a graph on `n` nodes from unordered pairs. Duplicate and
    /// reciprocal pairs collapse into one edge.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut degree = vec![0usize; n];
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for node in [u, v] {
                if node >= n {
                    return Err(Error::NodeOutOfRange { node, n });
                }
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();

        for &(u, v) in &edges {
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut neighbors = vec![0; 2 * edges.len()];
        // Edges are sorted by (min, max), so writing both directions in this
        // order leaves every neighbor list sorted.
        for &(u, v) in &edges {
            neighbors[cursor[v]] = u;
            cursor[v] += 1;
        }
        for &(u, v) in &edges {
            neighbors[cursor[u]] = v;
            cursor[u] += 1;
        }
        let graph = Graph { offsets, neighbors };
        debug_assert!(graph.check_invariants());
        Ok(graph)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Sorted neighbor list of `v`. Panics if `v` is out of range.
    #[inline]
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.offsets[v + 1] - self.offsets[v])
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.offsets.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn average_degree(&self) -> f64 {
        if self.node_count() == 0 {
            return 0.0;
        }
        2.0 * self.edge_count() as f64 / self.node_count() as f64
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count()
            && v < self.node_count()
            && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }

    /// Simple-graph invariants: sorted, loop-free, duplicate-free, symmetric.
    pub fn check_invariants(&self) -> bool {
        let n = self.node_count();
        let mut degree_sum = 0;
        for u in 0..n {
            let nb = self.neighbors(u);
            degree_sum += nb.len();
            if nb.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nb {
                if v == u || v >= n || self.neighbors(v).binary_search(&u).is_err() {
                    return false;
                }
            }
        }
        degree_sum == 2 * self.edge_count()
    }

    /// BFS hop distances from `source`; `usize::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            let mut comp = vec![root];
            seen[root] = true;
            let mut head = 0;
            while head < comp.len() {
                let u = comp[head];
                head += 1;
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    /// Returns `Err(Disconnected)` naming a node unreachable from node 0.
    pub fn require_connected(&self) -> Result<()> {
        match self.first_unreachable() {
            None => Ok(()),
            Some(to) => Err(Error::Disconnected { from: 0, to }),
        }
    }

    fn first_unreachable(&self) -> Option<NodeId> {
        if self.node_count() == 0 {
            return None;
        }
        self.bfs_distances(0).iter().position(|&d| d == usize::MAX)
    }

    /// Subgraph induced by `keep` (any order, no duplicates); node `keep[k]`
    /// becomes node `k`.
    pub fn induced(&self, keep: &[NodeId]) -> (Graph, Relabel) {
        let relabel = Relabel::from_retained(self.node_count(), keep.to_vec());
        let edges = keep.iter().enumerate().flat_map(|(new_u, &old_u)| {
            let relabel = &relabel;
            self.neighbors(old_u)
                .iter()
                .filter_map(move |&old_v| relabel.get(old_v).map(|new_v| (new_u, new_v)))
                .filter(|&(a, b)| a < b)
        });
        let graph = Graph::from_edges(keep.len(), edges.collect::<Vec<_>>())
            .expect("induced subgraph of a simple graph is simple");
        (graph, relabel)
    }

    /// Largest connected component, relabeled densely in ascending original
    /// id order. Ties go to the component holding the smallest node id.
    pub fn largest_connected_component(&self) -> (Graph, Relabel) {
        let best = self
            .components()
            .into_iter()
            .fold(Vec::new(), |best, comp| {
                if comp.len() > best.len() {
                    comp
                } else {
                    best
                }
            });
        self.induced(&best)
    }

    /// Removes the given undirected edge, if present.
    pub fn without_edge(&self, u: NodeId, v: NodeId) -> Graph {
        let edges: Vec<_> = self
            .edges()
            .filter(|&e| e != (u.min(v), u.max(v)))
            .collect();
        Graph::from_edges(self.node_count(), edges).expect("subgraph of a simple graph is simple")
    }

    /// Maximum BFS distance over all pairs.
    pub fn hop_diameter(&self) -> Result<usize> {
        self.require_connected()?;
        Ok((0..self.node_count())
            .into_par_iter()
            .map(|s| self.bfs_distances(s).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0))
    }
}
