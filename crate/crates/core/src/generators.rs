//! Graph families: the three scale-free models plus small baselines.
//!
//! All generators emit node ids in creation order, so the nodes of an earlier
//! generation always occupy the prefix `0..N_g` of a later one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub const APOLLONIAN_MAX_GENERATION: u32 = 12;
pub const PSEUDOFRACTAL_MAX_GENERATION: u32 = 14;

/// Apollonian network after `generation` iterations.
#[derive(Clone, Debug)]
pub struct ApollonianState {
    pub graph: Graph,
    pub generation: u32,
    /// Triangles created at the latest iteration; the next iteration adds
    /// node `N_g + k` inside `active_triangles[k]`.
    pub active_triangles: Vec<[NodeId; 3]>,
    /// Iteration at which each node was created.
    pub birth_iteration: Vec<u32>,
    edges: Vec<(NodeId, NodeId)>,
}

impl ApollonianState {
    /// The tetrahedron with its four faces active.
    pub fn initial() -> Self {
        let edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        ApollonianState {
            graph: Graph::from_edges(4, edges.iter().copied()).unwrap(),
            generation: 0,
            active_triangles: vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
            birth_iteration: vec![0; 4],
            edges,
        }
    }

    /// One construction step: a new node inside every active triangle.
    pub fn grow(&self) -> Self {
        let old_n = self.graph.node_count();
        let mut edges = self.edges.clone();
        let mut birth_iteration = self.birth_iteration.clone();
        let mut active = Vec::with_capacity(3 * self.active_triangles.len());
        for (k, &[p, q, r]) in self.active_triangles.iter().enumerate() {
            let i = old_n + k;
            edges.extend([(p, i), (q, i), (r, i)]);
            birth_iteration.push(self.generation + 1);
            active.extend([[p, q, i], [p, r, i], [q, r, i]]);
        }
        let n = old_n + self.active_triangles.len();
        ApollonianState {
            graph: Graph::from_edges(n, edges.iter().copied()).unwrap(),
            generation: self.generation + 1,
            active_triangles: active,
            birth_iteration,
            edges,
        }
    }

    /// Number of nodes present before the latest iteration (all nodes at g = 0).
    pub fn old_node_count(&self) -> usize {
        if self.generation == 0 {
            4
        } else {
            apollonian_node_count(self.generation - 1)
        }
    }
}

pub fn apollonian_node_count(g: u32) -> usize {
    2 * 3usize.pow(g) + 2
}

pub fn apollonian_edge_count(g: u32) -> usize {
    6 * 3usize.pow(g)
}

/// Apollonian network `A_g`.
pub fn apollonian(g: u32) -> Result<ApollonianState> {
    apollonian_sequence(g).map(|mut states| states.pop().unwrap())
}

/// `A_0, A_1, ..., A_g`.
pub fn apollonian_sequence(g: u32) -> Result<Vec<ApollonianState>> {
    if g > APOLLONIAN_MAX_GENERATION {
        return Err(Error::TooLarge {
            what: "apollonian generation",
            size: g as usize,
            cap: APOLLONIAN_MAX_GENERATION as usize,
            hint: "",
        });
    }
    let mut states = vec![ApollonianState::initial()];
    for _ in 0..g {
        let next = states.last().unwrap().grow();
        states.push(next);
    }
    Ok(states)
}

/// Pseudofractal scale-free web after `generation` iterations.
#[derive(Clone, Debug)]
pub struct PseudofractalState {
    pub graph: Graph,
    pub generation: u32,
}

pub fn pseudofractal_node_count(g: u32) -> usize {
    3 * (3usize.pow(g) + 1) / 2
}

pub fn pseudofractal_edge_count(g: u32) -> usize {
    3usize.pow(g + 1)
}

/// Pseudofractal web `F_g`: starting from a triangle, every edge spawns a
/// node joined to both of its endpoints.
pub fn pseudofractal(g: u32) -> Result<PseudofractalState> {
    if g > PSEUDOFRACTAL_MAX_GENERATION {
        return Err(Error::TooLarge {
            what: "pseudofractal generation",
            size: g as usize,
            cap: PSEUDOFRACTAL_MAX_GENERATION as usize,
            hint: "",
        });
    }
    let mut edges: Vec<(NodeId, NodeId)> = vec![(0, 1), (0, 2), (1, 2)];
    let mut n = 3;
    for _ in 0..g {
        let mut next = Vec::with_capacity(3 * edges.len());
        for &(u, v) in &edges {
            next.extend([(u, v), (u, n), (v, n)]);
            n += 1;
        }
        edges = next;
    }
    Ok(PseudofractalState {
        graph: Graph::from_edges(n, edges)?,
        generation: g,
    })
}

/// Barabási–Albert growth parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaConfig {
    /// Final node count.
    pub n: usize,
    /// Edges added with each new node.
    pub m: usize,
    /// Size of the initial clique.
    pub m0: usize,
    pub seed: u64,
}

impl BaConfig {
    /// Uses the default initial clique of `m + 1` nodes.
    pub fn new(n: usize, m: usize, seed: u64) -> Self {
        BaConfig {
            n,
            m,
            m0: m + 1,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidConfig("BA requires m >= 1".into()));
        }
        if self.m0 < self.m {
            return Err(Error::InvalidConfig(format!(
                "BA requires m0 >= m (m0 = {}, m = {})",
                self.m0, self.m
            )));
        }
        if self.n < self.m0 {
            return Err(Error::InvalidConfig(format!(
                "BA requires n >= m0 (n = {}, m0 = {})",
                self.n, self.m0
            )));
        }
        Ok(())
    }
}

/// Barabási–Albert network grown from a clique on `m0` nodes.
///
/// Each new node draws targets from the flat endpoint list (which holds each
/// node once per incident edge, so a uniform draw is degree-proportional) and
/// rejects repeats until it has `m` distinct targets.
pub fn barabasi_albert(cfg: BaConfig) -> Result<Graph> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut edges = Vec::with_capacity(cfg.m0 * cfg.m0 / 2 + (cfg.n - cfg.m0) * cfg.m);
    let mut endpoints: Vec<NodeId> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..cfg.m0 {
        for v in u + 1..cfg.m0 {
            edges.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    let mut targets = Vec::with_capacity(cfg.m);
    for new in cfg.m0..cfg.n {
        targets.clear();
        while targets.len() < cfg.m {
            // A single-node seed graph has no endpoints yet.
            let t = if endpoints.is_empty() {
                rng.random_range(0..new)
            } else {
                endpoints[rng.random_range(0..endpoints.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, new));
            endpoints.extend([t, new]);
        }
    }
    Graph::from_edges(cfg.n, edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidConfig("complete graph needs n >= 1".into()));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidConfig(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|u| (u, (u + 1) % n)))
}

pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidConfig("path needs n >= 1".into()));
    }
    Graph::from_edges(n, (1..n).map(|u| (u - 1, u)))
}

/// Star with node 0 at the center and `leaves` leaves.
pub fn star(leaves: usize) -> Result<Graph> {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
}
